#include <benchmark/benchmark.h>

// libbenchmark_main ships as LTO bytecode tied to one compiler release; our own main avoids linking it.
BENCHMARK_MAIN();
