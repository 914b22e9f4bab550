#pragma once

#include "lckw/constructions.hpp"

#include <string>
#include <vector>

namespace lckw {

struct CorpusEntry {
  std::string name;
  std::string family;
  HermitianStructure<Rational> h;
  ConformalClass expected_class = ConformalClass::StrictLcK;
};

/// Built-in corpus: Kodaira family, OT family (with angles), double
/// extensions over flat and non-flat bases, non-Gauduchon weight
/// deformations and Kähler controls. Sorted by name.
std::vector<CorpusEntry> builtin_corpus();

/// Kodaira n = 2 with the metric on the (X_1, Y_1) pair doubled. The Lee
/// system dω = θ∧ω is inconsistent, so the structure is not lcK.
HermitianStructure<Rational> perturbed_kodaira();

}  // namespace lckw
