#include "dehn/complexity.hpp"

#include <algorithm>

namespace dehn {

namespace {

bool greater_triple(const ComplexityTriple& a, const ComplexityTriple& b) {
  return compare_triples(a, b) == std::strong_ordering::greater;
}

}  // namespace

std::string ComplexityTriple::str() const {
  return "(" + std::to_string(c1) + "," + std::to_string(c2) + "," + std::to_string(c3) + ")";
}

FComplexitySet::FComplexitySet(std::vector<ComplexityTriple> t) : triples(std::move(t)) {
  std::stable_sort(triples.begin(), triples.end(), greater_triple);
}

void FComplexitySet::insert(const ComplexityTriple& t) {
  triples.insert(std::upper_bound(triples.begin(), triples.end(), t, greater_triple), t);
}

std::string FComplexitySet::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < triples.size(); ++i) s += (i ? "," : "") + triples[i].str();
  return s + "}";
}

long index_of_component(long chi, long gamma_hits) { return -2 * chi + gamma_hits; }

long index_of_0handle(long f1_touches, long gamma_hits) { return f1_touches + gamma_hits - 2; }

ComponentData component_data(const FComponent& fc) {
  return {fc.zero_count, fc.one_count, fc.boundary_circles, fc.gamma_hits};
}

FComplexitySet f_complexity(const std::vector<ComponentData>& comps) {
  FComplexitySet s;
  for (auto& c : comps)
    if (c.index() > 0) s.insert(c.triple());
  return s;
}

FComplexitySet f_complexity_all(const std::vector<ComponentData>& comps) {
  FComplexitySet s;
  for (auto& c : comps) s.insert(c.triple());
  return s;
}

std::strong_ordering compare_triples(const ComplexityTriple& a, const ComplexityTriple& b) {
  if (auto c = a.c1 <=> b.c1; c != 0) return c;
  if (auto c = a.c2 <=> b.c2; c != 0) return c;
  return a.c3 <=> b.c3;
}

std::strong_ordering compare_sets(const FComplexitySet& a, const FComplexitySet& b) {
  std::size_t n = std::max(a.triples.size(), b.triples.size());
  const ComplexityTriple zero{};
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexityTriple& x = i < a.triples.size() ? a.triples[i] : zero;
    const ComplexityTriple& y = i < b.triples.size() ? b.triples[i] : zero;
    if (auto c = compare_triples(x, y); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare_complexity(const Complexity& a, const Complexity& b) {
  if (auto c = compare_sets(a.cf, b.cf); c != 0) return c;
  return b.n <=> a.n;
}

std::strong_ordering compare_extended(const ExtendedComplexity& a, const ExtendedComplexity& b) {
  if (auto c = compare_sets(a.cf_plus, b.cf_plus); c != 0) return c;
  return b.n <=> a.n;
}

std::strong_ordering compare_vertical(const VerticalComplexity& a, const VerticalComplexity& b) {
  if (auto c = a.two_handle_meets <=> b.two_handle_meets; c != 0) return c;
  return a.one_handle_meets <=> b.one_handle_meets;
}

Complexity complexity_of(const std::vector<SphereComplex>& balls) {
  Complexity out;
  std::vector<ComponentData> all;
  for (auto& b : balls) {
    bool positive = false;
    for (auto& fc : f_components(b)) {
      ComponentData cd = component_data(fc);
      if (cd.index() > 0) positive = true;
      all.push_back(cd);
    }
    if (positive) ++out.n;
  }
  out.cf = f_complexity(all);
  return out;
}

ExtendedComplexity extended_complexity_of(const std::vector<SphereComplex>& balls) {
  ExtendedComplexity out;
  std::vector<ComponentData> all;
  for (auto& b : balls) {
    bool positive = false;
    for (auto& fc : f_components(b)) {
      ComponentData cd = component_data(fc);
      if (cd.index() > 0) positive = true;
      all.push_back(cd);
    }
    if (positive) ++out.n;
  }
  out.cf_plus = f_complexity_all(all);
  return out;
}

mpq_class surgery_bound(long chi, long gamma_hits, long delta) {
  if (delta < 2) throw DomainError("surgery_bound requires delta >= 2");
  mpq_class q(mpz_class(index_of_component(chi, gamma_hits)), mpz_class(2 * (delta - 1)));
  q.canonicalize();
  return q;
}

mpz_class framing_polynomial(const mpz_class& k1, const mpz_class& k2, const mpz_class& k3, const mpz_class& n) {
  return n * n * k1 + n * k2 + k3;
}

const char* to_string(std::strong_ordering o) {
  if (o == std::strong_ordering::less) return "Less";
  if (o == std::strong_ordering::greater) return "Greater";
  return "Equal";
}

}  // namespace dehn
