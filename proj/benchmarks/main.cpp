#include <benchmark/benchmark.h>

// The packaged benchmark_main archive carries LTO bytecode tied to a specific
// compiler build, so the entry point is provided here.
BENCHMARK_MAIN();
