#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace levyh {

enum class Status { Holds, Fails, Unknown };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::Unknown: return "unknown";
  }
  return "unknown";
}

struct Citation {
  std::string rule;    // stable rule id
  std::string anchor;  // the condition applied, in words
  std::string source = "computed";  // computed | asserted
};

/// Trilean outcome with numeric evidence and the chain of applied rules.
struct Verdict {
  Status status = Status::Unknown;
  std::map<std::string, double> evidence;
  std::vector<Citation> citations;
  std::vector<std::string> caveats;

  bool holds() const { return status == Status::Holds; }
  bool fails() const { return status == Status::Fails; }
};

/// Growth functions f admissible in the Rao-type bounds: positive, increasing
/// on [1, inf) with divergent integral of 1/(lambda f(lambda)). Each family
/// member satisfies the divergence property analytically.
struct GrowthFunction {
  enum class Kind { Constant, Log, LogLogLog };
  Kind kind = Kind::Log;
  double c = 1.0;

  double operator()(double lambda) const {
    switch (kind) {
      case Kind::Constant:
        return c;
      case Kind::Log:
        return c * std::log(2.0 + lambda);
      case Kind::LogLogLog:
        return c * std::log(2.0 + lambda) *
               std::log(std::log(std::exp(1.0) + lambda));
    }
    return c;
  }

  std::string name() const {
    switch (kind) {
      case Kind::Constant: return "constant";
      case Kind::Log: return "log";
      case Kind::LogLogLog: return "log-loglog";
    }
    return "?";
  }
};

/// Caller-supplied split Im psi = phi1 + phi2 (1-D); validated, never
/// searched for.
struct SplitWitness {
  std::function<double(double)> phi1;
  std::function<double(double)> phi2;
};

/// Log-spaced evaluation grid for the asymptotic ratio checks.
struct GridSpec {
  double z_lo = 1e-2;
  double z_hi = 1e6;
  int per_decade = 96;
  int fit_decades = 2;  // trailing window for the trend fit

  std::vector<double> points() const {
    std::vector<double> out;
    int decades = static_cast<int>(std::round(std::log10(z_hi / z_lo)));
    int n = std::max(2, decades * per_decade);
    for (int i = 0; i <= n; ++i)
      out.push_back(z_lo * std::pow(z_hi / z_lo, double(i) / n));
    return out;
  }
};

}  // namespace levyh
