// Decompose the cube-root ring of the A_3 invariant ring over F_3 and print
// the summand classes with their multiplicities.

#include <iostream>

#include "frobsplit/frobsplit.hpp"

using namespace frobsplit;

int main() {
  MatrixGroup g = builtin_group("a3");
  for (int e = 1; e <= 2; ++e) {
    DecompositionReport rep = decompose(g, e);
    std::cout << "e = " << e << " (q = " << ipow(rep.p, e) << "):\n";
    for (const auto& cls : rep.classes) {
      std::cout << "  " << (cls.name ? *cls.name : cls.label) << " x " << cls.multiplicity << ", shifts";
      for (const auto& s : cls.shifts) std::cout << " " << to_string(s);
      std::cout << "\n";
    }
  }
  return 0;
}
