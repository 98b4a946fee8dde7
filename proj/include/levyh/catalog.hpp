#pragma once

#include <complex>
#include <functional>

#include "levyh/classifier.hpp"

namespace levyh {

/// Canonical process with optional closed-form exponent and the expected
/// outcomes reproduced by the golden regression.
struct CatalogEntry {
  std::string name;
  LevyTriplet triplet;
  std::function<std::complex<double>(double)> closed_form_psi;  // may be empty
  std::map<std::string, Status> expected;  // checker id -> status
  std::optional<BCase> expected_case;
  Status expected_h = Status::Unknown;
  std::vector<std::string> expected_rules;  // ids that must appear, in order
  HittingSet expected_hitting = HittingSet::Unknown;
};

const CatalogEntry& catalog_get(const std::string& name);
std::vector<std::string> catalog_list();

}  // namespace levyh
