#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dendro/presheaf.hpp"

namespace dendro {

/// A finite coloured symmetric operad given by functions. Operations of
/// profile (ins; out) are the integers [0, count(ins, out)).
struct ColouredOperad {
  std::string name;
  int colours = 1;
  std::function<int(const std::vector<int>& ins, int out)> count;
  /// p in P(ins; out) with q in P(qins; ins[i]) plugged into input i.
  std::function<int(const std::vector<int>& ins, int out, int p, int i, const std::vector<int>& qins, int q)> compose;
  /// p in P(ins; out) |-> p.s in P(ins o s; out) where (ins o s)[j] = ins[s[j]].
  std::function<int(const std::vector<int>& ins, int out, int p, const std::vector<int>& s)> permute;
  /// The identity operation in P(c; c).
  std::function<int(int c)> unit;
};

/// One operation in every arity >= 1.
ColouredOperad comm_operad();
/// Free operad on one commutative binary operation: leaf-labelled binary trees.
ColouredOperad free_binary_operad();
/// Comm on each colour separately.
ColouredOperad diagonal_comm_operad(int colours);
/// Colours 0 < 1 < ... ; one operation (c_1..c_n; d) when d <= every c_i.
ColouredOperad poset_operad(int colours);
/// Z/2 in every arity >= 2, composition adds degrees.
ColouredOperad graded_comm_operad();
/// One operation for every profile of arity >= 1.
ColouredOperad chaotic_operad(int colours);
/// Two colours with operations only in arity <= 2; composites are undefined,
/// so the nerve is only meaningful on trees with vertices of arity <= 2.
ColouredOperad binary_fixture_operad();

/// The dendroidal nerve: labelings of edges by colours and vertices by
/// operations.
FormulaPtr nerve_formula(const ColouredOperad& p);

struct OperadMap {
  const ColouredOperad* source = nullptr;
  const ColouredOperad* target = nullptr;
  std::vector<int> colour_map;
  std::function<int(const std::vector<int>& ins, int out, int p)> on_ops;
};

struct DkReport {
  bool fully_faithful = true;
  bool essentially_surjective = true;
  std::string detail;
  bool equivalence() const { return fully_faithful && essentially_surjective; }
};
/// Dwyer-Kan equivalence test on operations of arity <= max_arity.
DkReport dk_check(const OperadMap& f, int max_arity);

/// Unit, associativity and equivariance laws on arities <= max_arity.
bool check_operad_laws(const ColouredOperad& p, int max_arity);

}  // namespace dendro
