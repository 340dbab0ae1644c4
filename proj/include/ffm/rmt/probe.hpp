#pragma once

#include <vector>

#include "ffm/rmt/hankel.hpp"

namespace ffm::rmt {

// Integral of phi over USp(2N) via the reduction to <|Z_U|> on USp(2N-2).
double i_of_n(int N, const HankelOptions& opts = {});

struct ProbeRow {
  double theta = 0;
  double exact = 0;
  double asymptotic = 0;
  double epsilon = 0;  // exact / asymptotic - 1
};

struct ErrorProbe {
  int N = 0;
  std::vector<ProbeRow> rows;
  double f0 = 0;  // <|Z_U(0)|>
  double f0_over_N = 0;
};

// s = 1/2 throughout; thetas must lie in (0, pi).
ErrorProbe error_probe(int N, const std::vector<double>& thetas, unsigned workers = 1, const HankelOptions& opts = {});

struct AndreiefWeight {
  double s = 1;    // exponent of |x - y|^{2s}; s = 0 gives sqrt(1 - x^2) alone
  double y = 0;
};

// |N-dimensional quadrature of (1/N!) det^2 prod w  -  det of 1-D moments| for N <= 3.
double andreief_check(int N, const AndreiefWeight& wt);

}  // namespace ffm::rmt
