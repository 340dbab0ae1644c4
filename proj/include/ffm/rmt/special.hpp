#pragma once

namespace ffm::rmt {

// Glaisher-Kinkelin constant.
inline constexpr double kGlaisher = 1.28242712910062263687534256886979;

double log_barnes_g(double z);  // z > 0
double barnes_g(double z);      // exact for positive integers
double beta_fn(double x, double y);

// sqrt(2) G(1/2)^2 B(5/8, 1/2).
double phi_average_constant();

}  // namespace ffm::rmt
