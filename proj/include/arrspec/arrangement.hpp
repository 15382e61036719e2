#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arrspec/linalg.hpp"
#include "arrspec/rational.hpp"

namespace arrspec {

struct LinearForm {
  std::vector<Rational> c;  // first nonzero coefficient is 1
};

struct Arrangement {
  int n = 0;
  std::vector<LinearForm> forms;
  int d() const { return static_cast<int>(forms.size()); }
};

// Validates and normalizes; throws ZeroForm, DuplicateForm, Shape, EmptyArrangement.
Arrangement make_arrangement(int n, const std::vector<std::vector<Rational>>& rows);
Arrangement parse_arrangement(const std::string& text);
std::string to_text(const Arrangement& A);
QMatrix normal_matrix(const Arrangement& A);  // d x n

bool is_essential(const Arrangement& A);

struct Flat {
  int rank = 0;
  QMatrix equations;         // reduced echelon basis of the span of the vanishing forms
  int multiplicity = 0;      // number of forms vanishing on the flat
  std::vector<int> members;  // their indices
};

struct LatticeInvariants {
  std::map<int, std::vector<Flat>> flatsByRank;  // rank 0 holds the whole space
  std::map<int, std::vector<long>> moebius;      // parallel to flatsByRank
  std::vector<long> poincareCoefficients;
  long chiU = 0;
  long tjurinaSection = 0;
};

LatticeInvariants intersection_lattice(const Arrangement& A);

Arrangement delete_form(const Arrangement& A, int i);  // IndexOutOfRange, EmptyResult

struct Factor {
  std::vector<int> formIndices;
  QMatrix variableSubspace;  // rows: basis of the span of the component's normals
  Arrangement sub;           // the component in those coordinates
};
// Connected components of the linear matroid of the normals; nullopt if connected.
std::optional<std::vector<Factor>> product_decomposition(const Arrangement& A);
// Circuits of size at most maxSize, as sorted index lists.
std::vector<std::vector<int>> circuits(const Arrangement& A, int maxSize);

struct SectionCertificate {
  bool nonProportional = false;
  bool essential = false;
  bool multiplicitiesMatch = false;
  int attempts = 0;
  std::vector<Integer> hyperplane;
  bool ok() const { return nonProportional && essential && multiplicitiesMatch; }
};

// Restriction of every form to the hyperplane h.x = 0, in a fixed basis of it.
// Forms are returned unnormalized and possibly dependent; certify before use.
std::vector<std::vector<Rational>> restrict_forms(const Arrangement& A,
                                                  const std::vector<Integer>& h);
SectionCertificate certify_section(const Arrangement& A, const std::vector<Integer>& h);
// Throws GenericityFailed after maxAttempts uncertified draws.
std::pair<Arrangement, SectionCertificate> generic_section(const Arrangement& A, uint64_t seed,
                                                           int maxAttempts = 50);

}  // namespace arrspec
