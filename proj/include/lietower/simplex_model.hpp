#pragma once

#include <vector>

#include "lietower/cdgl.hpp"

namespace lietower::lsc {

using cdgl::Cdgl;
using freelie::GenIndex;
using freelie::LieElement;

// Largest simplex dimension with single-digit vertex labels; inputs beyond
// this are rejected with the limit in the message.
constexpr int kMaxSimplexDim = 9;

std::string subset_name(const std::vector<int>& subset);

// The free cdgl on the desuspended nondegenerate chains of the n-simplex,
// with the differential fixed by: vertices are MC, the linear part is the
// desuspended boundary, and cofaces/codegeneracies are cdgl maps.
struct SimplexModel {
  int n = 0;
  Cdgl algebra;

  GenIndex generator_of(const std::vector<int>& subset) const;
  LieElement top() const;
};

// Lawrence-Sullivan interval: generators a0, a1 (MC) and a01 with
// d a01 = ad_{a01}(a1) + sum_k (B_k/k!) ad_{a01}^k (a1 - a0).
Cdgl ls_interval(int N);

// Memoized; built inductively over the dimension.
const SimplexModel& simplex_model(int n, int N);

// Exact Bernoulli numbers, B(1) = -1/2 convention.
std::vector<Rational> bernoulli_numbers(int count);

// Generator-image morphism between presented cdgl's.
struct CdglMorphism {
  Cdgl source;
  Cdgl target;
  std::vector<LieElement> images;  // per source generator

  LieElement apply(const LieElement& e) const;
  // Exact commutation with the differentials, mod the target truncation.
  bool commutes_with_differentials() const;
};

CdglMorphism compose(const CdglMorphism& g, const CdglMorphism& f);

enum class CosimplicialKind { coface, codegeneracy };

// coface(i, n): L_{n-1} -> L_n; codegeneracy(i, n): L_n -> L_{n-1}.
CdglMorphism cosimplicial_operator(CosimplicialKind kind, int i, int n, int N);

}  // namespace lietower::lsc
