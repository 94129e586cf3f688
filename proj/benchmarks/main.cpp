// The distro's static benchmark_main carries LTO bytecode from another GCC
// release, so the entry point lives here instead.
#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
