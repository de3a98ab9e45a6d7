#pragma once

#include "capitulab/galchar.hpp"

#include <optional>
#include <random>
#include <string>

namespace capitulab::cli {

struct RandomModule {
  Integer p;
  galchar::GaloisModule module;
};

// Direct sum of companion blocks of Hensel factors of x^d - 1 mod p^k, conjugated by
// random automorphisms of the underlying group. #G <= max_order, d <= max_d.
RandomModule random_galois_module(std::mt19937_64& rng, unsigned long max_order, unsigned long max_d);

// Why the decomposition is unsound, or empty.
std::optional<std::string> check_decomposition(const galchar::GaloisModule& module, const galchar::Decomposition& dec);

}  // namespace capitulab::cli
