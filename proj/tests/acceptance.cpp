// One line per acceptance criterion; exit status 0 only if every criterion holds.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "mockq/harness.hpp"
#include "mockq/mordell.hpp"
#include "mockq/valpha.hpp"

using namespace mockq;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Line {
  bool ok = true;
  std::string detail;

  void suite(const std::string& name, long cases, double tol) {
    const IdentityReport r = run_suite(name, cases, kSeed, tol);
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s%s max=%.2e tol=%.0e n=%ld %lldms", detail.empty() ? "" : "; ", name.c_str(),
                  r.max_residual, tol, r.cases, static_cast<long long>(r.wall_time_ms));
    detail += buf;
    if (!r.passed()) {
      ok = false;
      for (std::size_t i = 0; i < r.failures.size() && i < 3; ++i) {
        std::snprintf(buf, sizeof buf, " [fail %s -> %.3e]", r.failures[i].inputs.c_str(), r.failures[i].residual);
        detail += buf;
      }
    }
  }

  void check(const std::string& what, double value, double tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s max=%.2e tol=%.0e", detail.empty() ? "" : "; ", what.c_str(), value, tol);
    detail += buf;
    if (!(value < tol)) ok = false;
  }
};

int failures = 0;

void report(int n, const char* title, const Line& l, double seconds) {
  std::printf("criterion %2d %s: %s (%.1fs) %s\n", n, l.ok ? "PASS" : "FAIL", title, seconds, l.detail.c_str());
  std::fflush(stdout);
  if (!l.ok) ++failures;
}

template <class F>
void criterion(int n, const char* title, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Line l;
  try {
    body(l);
  } catch (const std::exception& e) {
    l.ok = false;
    l.detail += std::string(" error: ") + e.what();
  }
  report(n, title, l, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();

  criterion(1, "mu elliptic and modular laws", [](Line& l) {
    const auto t0 = std::chrono::steady_clock::now();
    l.suite("mu-elliptic", 100, 1e-9);
    l.suite("mu-modular", 100, 1e-9);
    l.check("seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 10.0);
  });

  criterion(2, "theta sum vs product", [](Line& l) { l.suite("theta-consistency", 100, 1e-11); });

  criterion(3, "Mordell integral", [](Line& l) {
    l.suite("h-cross", 50, 1e-8);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const UpperHalfPoint t(-0.45 + 0.1 * i, 0.5 + 0.15 * i);
      worst = std::max(worst, std::abs(mordell_h(0.5, t).value - 1.0 / principal_sqrt(-kI * t.value())));
    }
    l.check("h(1/2) at 10 tau", worst, 1e-9);
    l.suite("h-props", 20, 1e-8);
  });

  criterion(4, "g_ab laws and eta cube", [](Line& l) {
    l.suite("gab-props", 100, 1e-9);
    l.suite("eta-cube", 20, 1e-10);
  });

  criterion(5, "Kang identity", [](Line& l) { l.suite("kang", 50, 1e-8); });

  criterion(6, "period integrals", [](Line& l) {
    l.suite("z116", 20, 1e-6);
    l.suite("zlem-ext", 20, 1e-6);
  });

  criterion(7, "mock transformation law", [](Line& l) { l.suite("mock-transform", 25, 1e-8); });

  criterion(8, "phi multiplier", [](Line& l) { l.suite("phi-consistency", 10, 1e-10); });

  criterion(9, "Laplacian annihilation with holomorphic control",
            [](Line& l) { l.suite("laplacian", 1, 1e-4); });

  criterion(10, "quantum T-transformations", [](Line& l) { l.suite("quantum-t", 50, 1e-10); });

  criterion(11, "quantum M-transformations", [](Line& l) { l.suite("quantum-m", 10, 1e-7); });

  criterion(12, "delta calculus", [](Line& l) {
    l.suite("delta-vanish", 0, 1e-6);
    l.suite("delta-shifts", 10, 1e-6);
  });

  criterion(13, "A_alpha closure", [](Line& l) { l.suite("group-closure", 1000, 0.0); });

  criterion(14, "quantum-set closure", [](Line& l) { l.suite("set-closure", 200, 0.0); });

  criterion(15, "catalog", [](Line& l) {
    // mpmath at 40 digits
    const std::map<std::string, double> pinned = {
        {"V11", 0.17218408069656814744},  {"V21", -0.40763991768141488558},  {"V31", 0.10407974652066083964},
        {"V4'1", -1.6742972928770447507}, {"V4''1", -0.23234483319798127167}, {"V51", 0.25889254481467919149},
        {"V61", -0.28601458112259050804}};
    const auto cat = catalog_tuples();
    l.check("count mismatch", std::abs(static_cast<double>(cat.size()) - 7.0), 0.5);
    double worst = 0.0;
    for (const auto& e : cat) {
      const AlphaParams re(e.alpha.A(), e.alpha.C(), e.alpha.a());
      if (!(re == e.alpha)) worst = 1.0;
      worst = std::max(worst, std::abs(v_alpha(e.alpha, UpperHalfPoint(0.0, 1.0)).value - pinned.at(e.name)));
    }
    l.check("V(i) vs pinned", worst, 1e-12);
  });

  criterion(16, "eta multiplier cross-check", [](Line& l) { l.suite("psi-eta", 100, 1e-10); });

  // supplementary lines; they do not count toward the exit status
  const int counted = failures;
  criterion(0, "supplementary: finite terms of the M-law", [](Line& l) { l.suite("lemma-IJ", 20, 1e-6); });
  criterion(0, "supplementary: square-root branch", [](Line& l) { l.suite("branch-consistency", 100, 1e-12); });
  criterion(0, "supplementary: weight-3/2 Laplacian does not annihilate V_hat", [](Line& l) {
    const double r = laplacian_residual(AlphaParams(1, 3, 0), UpperHalfPoint(0.0, 1.0), 1e-3, {},
                                        LaplacianTarget::kCompleted, 1.5);
    l.check("inverse residual", 1.0 / r, 1e2);
  });
  failures = counted;

  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("acceptance: %d of 16 criteria failed, %.1fs total\n", failures, total);
  return failures == 0 ? 0 : 1;
}
