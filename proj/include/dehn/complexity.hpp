#pragma once

#include <compare>
#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

#include "dehn/sphere_complex.hpp"

namespace dehn {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct ComplexityTriple {
  long c1 = 0, c2 = 0, c3 = 0;
  bool operator==(const ComplexityTriple&) const = default;
  std::string str() const;
};

struct FComplexitySet {
  std::vector<ComplexityTriple> triples;  // kept sorted non-increasing
  FComplexitySet() = default;
  explicit FComplexitySet(std::vector<ComplexityTriple> t);
  void insert(const ComplexityTriple& t);
  bool operator==(const FComplexitySet&) const = default;
  std::string str() const;
};

struct Complexity {
  FComplexitySet cf;
  int n = 0;
  bool operator==(const Complexity&) const = default;
};

struct ExtendedComplexity {
  FComplexitySet cf_plus;
  int n = 0;
  bool operator==(const ExtendedComplexity&) const = default;
};

struct VerticalComplexity {
  long two_handle_meets = 0, one_handle_meets = 0;
};

long index_of_component(long chi, long gamma_hits);
long index_of_0handle(long f1_touches, long gamma_hits);

// component view fed by f_components
struct ComponentData {
  long zero_count = 0, one_count = 0, boundary_circles = 0, gamma_hits = 0;
  long chi() const { return zero_count - one_count; }
  long index() const { return index_of_component(chi(), gamma_hits); }
  ComplexityTriple triple() const { return {one_count + 1, index(), boundary_circles}; }
};

ComponentData component_data(const FComponent& fc);
FComplexitySet f_complexity(const std::vector<ComponentData>& comps);
FComplexitySet f_complexity_all(const std::vector<ComponentData>& comps);

std::strong_ordering compare_triples(const ComplexityTriple& a, const ComplexityTriple& b);
std::strong_ordering compare_sets(const FComplexitySet& a, const FComplexitySet& b);
std::strong_ordering compare_complexity(const Complexity& a, const Complexity& b);
std::strong_ordering compare_extended(const ExtendedComplexity& a, const ExtendedComplexity& b);
std::strong_ordering compare_vertical(const VerticalComplexity& a, const VerticalComplexity& b);

// complexity of a union of balls, each given by its boundary sphere
Complexity complexity_of(const std::vector<SphereComplex>& balls);
ExtendedComplexity extended_complexity_of(const std::vector<SphereComplex>& balls);

mpq_class surgery_bound(long chi, long gamma_hits, long delta);
mpz_class framing_polynomial(const mpz_class& k1, const mpz_class& k2, const mpz_class& k3, const mpz_class& n);

const char* to_string(std::strong_ordering o);

}  // namespace dehn
