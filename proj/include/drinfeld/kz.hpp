#pragma once

#include "drinfeld/braid.hpp"
#include "drinfeld/mzv.hpp"
#include "drinfeld/ncseries.hpp"

namespace drinfeld {

/// Truncated KZ associator. mu = 2*pi*sqrt(-1) is carried as mu2 = -4 pi^2.
struct KZTruncation {
  NCSeries<BigFloat> phi;
  int W = 0;
  unsigned digits = 0;
  BigFloat mu2;
  std::string cache_digest;
};

/// Call under a FloatContext of at least D digits.
KZTruncation build_kz(int W, unsigned D, MZVCache* cache = nullptr);

struct KZCheck {
  BigFloat grouplike, pentagon, hexagon1, hexagon2, two_cycle;
  BigFloat tol;
  bool pass = false;
};

KZCheck check_kz(const KZTruncation& t, const BigFloat& tol);

}  // namespace drinfeld
