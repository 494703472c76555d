#ifndef FROBSPLIT_GROUP_HPP
#define FROBSPLIT_GROUP_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobsplit/linalg.hpp"

namespace frobsplit {

inline long long default_group_cap() { return 1000000; }

/// word in the generators: list of (generator index, exponent)
struct Relator {
  std::vector<std::pair<int, int>> word;
  std::string text;
};

struct GroupPresentation {
  std::vector<Relator> relators;
  std::optional<long long> abstract_order;
};

/// Finite subgroup of GL_n(k) given by generators, with the element table
/// enumerated by breadth-first closure; elements_[0] is the identity and the
/// table order is deterministic (generators sorted before the walk).
class MatrixGroup {
 public:
  FieldSpecPtr spec;
  int n = 0;
  std::vector<FMatrix> generators;           // sorted
  std::vector<FMatrix> elements;             // BFS order
  std::optional<GroupPresentation> presentation;

  long long order() const { return static_cast<long long>(elements.size()); }

  int index_of(const FMatrix& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
  }

  /// index of elements[i] * elements[j]
  int product_index(int i, int j) const {
    build_tables();
    return mul_table_[i][j];
  }

  int inverse_index(int i) const {
    build_tables();
    return inv_table_[i];
  }

  FMatrix evaluate_word(const Relator& r) const {
    FMatrix m = FMatrix::identity(spec, n);
    for (auto [g, e] : r.word) {
      if (g < 0 || g >= static_cast<int>(generators.size()))
        throw FrobError("relator references generator g" + std::to_string(g + 1) + " which does not exist");
      FMatrix base = generators[g];
      if (e < 0) {
        auto inv = base.inverse();
        if (!inv) throw FrobError("generator not invertible");
        base = *inv;
        e = -e;
      }
      m = m * base.pow(e);
    }
    return m;
  }

  void finish_enumeration() {
    index_.clear();
    for (size_t i = 0; i < elements.size(); ++i) index_.emplace(elements[i], static_cast<int>(i));
  }

 private:
  void build_tables() const {
    if (!mul_table_.empty()) return;
    int m = static_cast<int>(elements.size());
    mul_table_.assign(m, std::vector<int>(m, -1));
    inv_table_.assign(m, -1);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        auto it = index_.find(elements[i] * elements[j]);
        if (it == index_.end()) throw FrobError("group table not closed (internal)");
        mul_table_[i][j] = it->second;
        if (it->second == 0) inv_table_[i] = j;
      }
  }

  std::map<FMatrix, int> index_;
  mutable std::vector<std::vector<int>> mul_table_;
  mutable std::vector<int> inv_table_;
};

/// breadth-first closure of the generators; throws when the cap is exceeded
/// (likely an infinite or mistyped group)
inline MatrixGroup generate_group(const FieldSpecPtr& spec, int n, std::vector<FMatrix> gens,
                                  long long cap = default_group_cap(),
                                  std::optional<GroupPresentation> presentation = std::nullopt) {
  MatrixGroup g;
  g.spec = spec;
  g.n = n;
  for (const auto& m : gens) {
    if (!m.inverse()) throw FrobError("group generator is singular");
  }
  // relators index the generators as given; the BFS walk uses a sorted,
  // deduplicated copy so the table order does not depend on input order
  g.generators = gens;
  std::vector<FMatrix> walk = gens;
  std::sort(walk.begin(), walk.end());
  walk.erase(std::unique(walk.begin(), walk.end(), [](const FMatrix& a, const FMatrix& b) { return a == b; }),
             walk.end());
  std::map<FMatrix, int> seen;
  FMatrix id = FMatrix::identity(spec, n);
  g.elements.push_back(id);
  seen.emplace(id, 0);
  for (size_t head = 0; head < g.elements.size(); ++head) {
    for (const auto& gen : walk) {
      FMatrix prod = g.elements[head] * gen;
      if (seen.emplace(prod, static_cast<int>(g.elements.size())).second) {
        g.elements.push_back(std::move(prod));
        if (static_cast<long long>(g.elements.size()) > cap)
          throw FrobError("group order cap (" + std::to_string(cap) + ") exceeded during enumeration");
      }
    }
  }
  g.presentation = std::move(presentation);
  g.finish_enumeration();
  return g;
}

/// monomial data for one element: g . x_j = scalars[j] * x_{perm[j]}
struct MonomialElement {
  std::vector<int> perm;
  std::vector<FieldElement> scalars;
};

struct MonomialStructure {
  std::vector<MonomialElement> per_element;  // aligned with the group table

  bool is_permutation() const {
    for (const auto& e : per_element)
      for (const auto& c : e.scalars)
        if (!c.is_one()) return false;
    return true;
  }
};

/// result of monomial-structure detection; refusal is a value, not an error
struct MonomialDetection {
  std::optional<MonomialStructure> structure;
  int offending_element = -1;
  int offending_variable = -1;

  bool ok() const { return structure.has_value(); }

  std::string refusal() const {
    if (ok()) return "";
    return "element #" + std::to_string(offending_element) + " does not map x" +
           std::to_string(offending_variable + 1) + " into a scalar multiple of a variable";
  }
};

inline MonomialDetection detect_monomial(const MatrixGroup& g) {
  MonomialDetection out;
  MonomialStructure ms;
  for (size_t idx = 0; idx < g.elements.size(); ++idx) {
    const FMatrix& m = g.elements[idx];
    MonomialElement elem;
    elem.perm.resize(g.n);
    elem.scalars.assign(g.n, FieldElement::zero(g.spec));
    for (int j = 0; j < g.n; ++j) {
      int row = -1;
      for (int i = 0; i < g.n; ++i) {
        if (m.at(i, j).is_zero()) continue;
        if (row >= 0) {
          out.offending_element = static_cast<int>(idx);
          out.offending_variable = j;
          return out;
        }
        row = i;
      }
      // row < 0 impossible: group elements are invertible
      elem.perm[j] = row;
      elem.scalars[j] = m.at(row, j);
    }
    ms.per_element.push_back(std::move(elem));
  }
  out.structure = std::move(ms);
  return out;
}

struct SmallnessReport {
  std::vector<int> pseudoreflections;  // element indices with rank(1 - g) = 1
  long long order = 0;
  bool relators_checked = false;
  bool relators_hold = true;
  std::optional<long long> abstract_order;
  bool injective = true;   // meaningful when a presentation with order is given
  bool small = false;
  std::string note;
};

/// pseudoreflection scan and smallness verdict. With a presentation the
/// representation is checked to be faithful (relators hold and the element
/// count matches the abstract order); without one the subgroup is its own
/// abstract group and only pseudoreflections matter.
inline SmallnessReport pseudoreflection_and_smallness(const MatrixGroup& g) {
  SmallnessReport rep;
  rep.order = g.order();
  FMatrix id = FMatrix::identity(g.spec, g.n);
  for (size_t i = 1; i < g.elements.size(); ++i) {
    if ((id - g.elements[i]).rank() == 1) rep.pseudoreflections.push_back(static_cast<int>(i));
  }
  if (g.presentation) {
    rep.relators_checked = true;
    for (const auto& r : g.presentation->relators) {
      if (!(g.evaluate_word(r) == id)) rep.relators_hold = false;
    }
    rep.abstract_order = g.presentation->abstract_order;
    if (rep.abstract_order) rep.injective = rep.relators_hold && rep.order == *rep.abstract_order;
    rep.small = rep.injective && rep.pseudoreflections.empty();
    if (!rep.injective) rep.note = "representation is not faithful: enumerated order " +
                                   std::to_string(rep.order) + " != abstract order " +
                                   (rep.abstract_order ? std::to_string(*rep.abstract_order) : "?");
  } else {
    rep.small = rep.pseudoreflections.empty();
    rep.note = "no abstract presentation given; smallness judged as a matrix group";
  }
  if (!rep.pseudoreflections.empty())
    rep.note = "contains " + std::to_string(rep.pseudoreflections.size()) + " pseudoreflection(s)";
  return rep;
}

/// entrywise p^e-th roots of every element; the group law is preserved since
/// the inverse Frobenius is a field automorphism
inline MatrixGroup twist_representation(const MatrixGroup& g, int e) {
  if (e == 0) return g;
  MatrixGroup out;
  out.spec = g.spec;
  out.n = g.n;
  out.presentation = g.presentation;
  for (const auto& m : g.generators) out.generators.push_back(m.transform_entries(&FieldElement::pth_root_iter, e));
  for (const auto& m : g.elements) out.elements.push_back(m.transform_entries(&FieldElement::pth_root_iter, e));
  out.finish_enumeration();
  return out;
}

}  // namespace frobsplit

#endif  // FROBSPLIT_GROUP_HPP
