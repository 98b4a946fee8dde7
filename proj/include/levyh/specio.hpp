#pragma once

#include <string>

#include "levyh/classifier.hpp"

namespace levyh {

struct ProcessSpec {
  LevyTriplet triplet;
  Assertions asserts;
};

/// Parses a process spec document:
///   { "dim": n, "a": [...], "Q": [[...]],
///     "levy_measure": { "components": [...] },
///     "assert": { "h_holds": bool, "bounded_resolvent": bool,
///                 "has_densities": bool } }
/// Component types: stable_power, log_singular, atoms, type_alpha_beta,
/// scaled_restriction. Unknown keys are rejected.
ProcessSpec parse_spec_json(const std::string& text);

/// Parses a bare measure document { "components": [...] }.
LevyMeasure parse_measure_json(const std::string& text, int dim);

/// Parses a finite measure { "atoms": [ {"x":[...], "w": ...} ] }.
FiniteMeasure parse_finite_measure_json(const std::string& text);

/// Canonical spec emission (deterministic field order); round-trips through
/// parse_spec_json byte-identically.
std::string spec_to_json(const LevyTriplet& t);

std::string measure_to_json(const LevyMeasure& mu);

/// Report rendering. The full evidence map is attached to the first
/// (deciding) chain entry.
std::string verdict_report_json(const HReport& rep, const EngineOptions& opts);
std::string verdict_report_json(const Verdict& v, const EngineOptions& opts);

std::string verdict_report_text(const HReport& rep);
std::string verdict_report_text(const Verdict& v);

}  // namespace levyh
