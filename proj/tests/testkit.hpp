#pragma once

// Minimal test harness: TEST_CASE registers a function, the provided main
// runs everything and reports one line per case. Exit code = failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace testkit {

struct Case {
  std::string name;
  std::function<void()> fn;
};

inline std::vector<Case>& registry() {
  static std::vector<Case> cases;
  return cases;
}

struct Registrar {
  Registrar(const char* name, std::function<void()> fn) {
    registry().push_back({name, std::move(fn)});
  }
};

struct Failure {
  std::string message;
};

inline int g_checks = 0;

inline void require(bool ok, const std::string& message) {
  ++g_checks;
  if (!ok) throw Failure{message};
}

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline void require_close(double a, double b, double tol, const std::string& label) {
  require(std::isfinite(a) && std::isfinite(b) && std::fabs(a - b) <= tol,
          label + ": " + fmt(a) + " vs " + fmt(b) + " (tol " + fmt(tol) + ")");
}

inline void require_rel(double a, double b, double rel, const std::string& label) {
  double scale = std::max(1.0, std::fabs(b));
  require(std::isfinite(a) && std::isfinite(b) && std::fabs(a - b) <= rel * scale,
          label + ": " + fmt(a) + " vs " + fmt(b) + " (rel " + fmt(rel) + ")");
}

inline int run_all() {
  int failed = 0;
  for (const auto& c : registry()) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.fn();
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      std::printf("ok    %-48s (%lld ms)\n", c.name.c_str(), static_cast<long long>(ms));
    } catch (const Failure& f) {
      ++failed;
      std::printf("FAIL  %-48s %s\n", c.name.c_str(), f.message.c_str());
    } catch (const std::exception& e) {
      ++failed;
      std::printf("FAIL  %-48s unexpected exception: %s\n", c.name.c_str(), e.what());
    }
  }
  std::printf("%zu cases, %d failed, %d checks\n", registry().size(), failed, g_checks);
  return failed;
}

}  // namespace testkit

#define TESTKIT_CONCAT_(a, b) a##b
#define TESTKIT_CONCAT(a, b) TESTKIT_CONCAT_(a, b)

#define TEST_CASE(name)                                                             \
  static void TESTKIT_CONCAT(test_fn_, __LINE__)();                                 \
  static testkit::Registrar TESTKIT_CONCAT(test_reg_, __LINE__)(                    \
      name, &TESTKIT_CONCAT(test_fn_, __LINE__));                                   \
  static void TESTKIT_CONCAT(test_fn_, __LINE__)()

#define CHECK(expr) testkit::require((expr), "CHECK failed: " #expr)
#define CHECK_MSG(expr, msg) testkit::require((expr), std::string(msg))
#define CHECK_CLOSE(a, b, tol) testkit::require_close((a), (b), (tol), #a " ~ " #b)
#define CHECK_REL(a, b, rel) testkit::require_rel((a), (b), (rel), #a " ~ " #b)
#define CHECK_THROWS(ExcType, expr)                                                 \
  do {                                                                              \
    bool caught_ = false;                                                           \
    try {                                                                           \
      (void)(expr);                                                                 \
    } catch (const ExcType&) {                                                      \
      caught_ = true;                                                               \
    } catch (const std::exception& e_) {                                            \
      testkit::require(false, std::string("expected " #ExcType ", got: ") + e_.what()); \
    }                                                                               \
    testkit::require(caught_, "expected " #ExcType " from " #expr);                 \
  } while (0)

#define TESTKIT_MAIN                                                                \
  int main() { return testkit::run_all(); }
