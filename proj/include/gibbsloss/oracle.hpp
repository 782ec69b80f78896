#pragma once

// Reference implementations by exhaustive enumeration and exact rational
// arithmetic. Deliberately naive: they read only the allowed relation and the
// labeling, and share no algorithmic code with the library proper.

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gibbsloss/classes.hpp"
#include "gibbsloss/markov.hpp"

namespace gibbsloss::oracle {

using Rational = boost::multiprecision::cpp_rational;

/// Every domain word labeled w, by extending all preimage choices position by position.
std::vector<Word> fiber(const System& system, const Word& w);

/// Sum of p(x_1) prod P(x_k, x_{k+1}) over the enumerated fiber.
double pushforward(const System& system, const MarkovMeasure& mu, const Word& w);

/// Depth from the definition: all interior positions, all subsets of occurring symbols.
int depth(const System& system, const Word& w);

/// Tau from the definition: all set partitions of the fiber into two-way bridged blocks.
int tau(const System& system, const Word& w);

/// (image 2-block, symbol) pairs violating eresolving on the given side.
std::vector<std::pair<Word, Symbol>> eresolving_failures(const System& system, Side side);

/// Exact stationary vector of the measure's transition matrix (entries converted exactly).
std::vector<Rational> stationary(const System& system, const MarkovMeasure& mu);

/// Exact nu[w] with the exact stationary initial vector.
Rational pushforward_exact(const System& system, const MarkovMeasure& mu, const Word& w);

/// Seeded random valid mixing system: 2-6 symbols, each pair allowed with
/// probability 1/2, 1-3 labels. Draws are repeated until the sample is
/// essential without trimming and mixing.
System random_system(std::uint64_t seed);

/// Fully supported Markov measure: weights uniform on [0.1, 1] normalized per row.
MarkovMeasure random_measure(const System& system, std::uint64_t seed);

}  // namespace gibbsloss::oracle
