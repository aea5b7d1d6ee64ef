#include "c0dynamo/analysis.hpp"
#include "c0dynamo/system.hpp"
#include "c0dynamo/torus.hpp"
#include "c0dynamo/witness.hpp"

#include <benchmark/benchmark.h>

using namespace c0dynamo;

namespace {

AssembledSystem bench_system() {
  return assemble(SequenceSpec::periodic_tail({Rat(37, 100)}, {Rat(1, 2), Rat(3, 8)}),
                  LayoutParams{});
}

void BM_TwistApply(benchmark::State& state) {
  AssembledSystem system = bench_system();
  TwistMap twist = *system.strip_twist(2);
  Point p{twist.center[0] + twist.radius / 5, twist.center[1] - twist.radius / 7};
  for (auto _ : state) {
    Point q = twist_apply(twist, p);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_TwistApply);

void BM_SystemEvalOnDisk(benchmark::State& state) {
  AssembledSystem system = bench_system();
  Point p = system.strip_twist(3)->center;
  p.back() += system.strip_twist(3)->radius / 6;
  for (auto _ : state) {
    Point q = system.eval(p);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_SystemEvalOnDisk);

void BM_SystemEvalOffDisks(benchmark::State& state) {
  AssembledSystem system = bench_system();
  Point p{0.41, 0.93};
  for (auto _ : state) {
    Point q = system.eval(p);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_SystemEvalOffDisks);

void BM_WitnessApply(benchmark::State& state) {
  LayoutParams params;
  auto a = SequenceSpec::periodic_tail({Rat(37, 100)}, {Rat(1, 2), Rat(3, 8)});
  auto b = SequenceSpec::periodic_tail({Rat(2, 5)}, {Rat(1, 2), Rat(3, 8)});
  ConjugacyWitness w = build_witness(a, b, params);
  Point p = w.entries().front().strip == 2 ? Point{0.4, 0.38} : Point{0.4, 0.4};
  for (auto _ : state) {
    Point q = w.apply(p);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_WitnessApply);

void BM_DecodeStrip(benchmark::State& state) {
  AssembledSystem system = bench_system();
  CubeMap g = [&system](const Point& p) { return system.eval(p); };
  LayoutParams params;
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    DecodeReport r = decode_strip(g, params, n, 1e-9);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_DecodeStrip)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_DecideConjugacy(benchmark::State& state) {
  TorusRotation rho{FormalReal::parse("3/4+sqrt2"), FormalReal::parse("1/2+sqrt3")};
  TorusRotation sigma = apply_unimodular(Mat2Z{1, 1, 0, 1}, rho);
  for (auto _ : state) {
    ConjugacyDecision d = decide_conjugacy(rho, sigma);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_DecideConjugacy);

void BM_CertificateRoundtrip(benchmark::State& state) {
  LayoutParams params;
  auto a = SequenceSpec::eventually_constant({}, Rat(1, 4));
  auto b = SequenceSpec::eventually_constant({}, Rat(1, 2));
  for (auto _ : state) {
    NonConjugacyCertificate cert = build_certificate(a, b, params);
    bool ok = verify_certificate(cert, a, b, params);
    benchmark::DoNotOptimize(ok);
  }
}
BENCHMARK(BM_CertificateRoundtrip)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
