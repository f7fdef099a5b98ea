#pragma once

#include <vector>

#include "ncortho/freeproduct.hpp"
#include "ncortho/jacobi.hpp"

namespace fixture {

inline std::vector<ncortho::OneDimRecurrence> classical(std::initializer_list<ncortho::ClassicalKind> kinds,
                                                        int n_max = 8, double alpha = 0.0) {
  std::vector<ncortho::OneDimRecurrence> out;
  for (auto k : kinds) out.push_back(ncortho::classical_coefficients(k, n_max, alpha));
  return out;
}

inline std::vector<ncortho::OneDimRecurrence> hermite(int letters, int n_max = 8) {
  return std::vector<ncortho::OneDimRecurrence>(
      static_cast<std::size_t>(letters), ncortho::classical_coefficients(ncortho::ClassicalKind::hermite, n_max));
}

inline ncortho::AdmissibleFamily hermite_family(int letters, int depth) {
  return ncortho::build(hermite(letters), depth);
}

}  // namespace fixture
