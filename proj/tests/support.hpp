#pragma once

#include <random>
#include <string>
#include <vector>

#include "tempora/scenario.hpp"
#include "tempora/types.hpp"

namespace testing_support {

using tempora::Scenario;

inline Scenario make_scenario(const std::vector<int>& outcome_counts, int length) {
  Scenario s;
  s.name = "test";
  for (std::size_t i = 0; i < outcome_counts.size(); ++i) {
    s.settings.push_back({static_cast<int>(i), outcome_counts[i]});
  }
  s.sequence_length = length;
  return s;
}

inline Scenario binary_scenario(int k, int length) {
  return make_scenario(std::vector<int>(static_cast<std::size_t>(k), 2), length);
}

inline tempora::ObjectiveTerm correlator(std::vector<int> seq, double c) {
  return {tempora::TermKind::correlator, std::move(seq), {}, c};
}

inline tempora::ObjectiveTerm probability(std::vector<int> settings, std::vector<int> outcomes,
                                          double c) {
  return {tempora::TermKind::probability, std::move(settings), std::move(outcomes), c};
}

inline tempora::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  tempora::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<tempora::MatrixXd> qr(a);
  return qr.householderQ();
}

inline tempora::MatrixXcd random_density(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  tempora::MatrixXcd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = {g(rng), g(rng)};
  tempora::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace testing_support

#include "tempora/opalg.hpp"

namespace testing_support {

// Independent quantum model for cross-checks: projective measurements from
// random unitaries, outcome blocks of random rank.
struct Model {
  int dim = 0;
  tempora::MatrixXcd rho;
  std::vector<std::vector<tempora::MatrixXcd>> proj;  // [setting][outcome]

  tempora::MatrixXcd word(const tempora::Word& w) const {
    tempora::MatrixXcd out = tempora::MatrixXcd::Identity(dim, dim);
    for (const auto& l : w.letters()) out = out * proj[l.setting][l.outcome];
    return out;
  }

  // Tr[Pi Pi^dagger rho], Pi = Pi_{r1}^{s1} ... Pi_{rn}^{sn}.
  double probability(const std::vector<int>& settings, const std::vector<int>& outcomes) const {
    tempora::MatrixXcd pi = tempora::MatrixXcd::Identity(dim, dim);
    for (std::size_t k = 0; k < settings.size(); ++k) pi = pi * proj[settings[k]][outcomes[k]];
    return (pi * pi.adjoint() * rho).trace().real();
  }

  double correlator(const std::vector<int>& settings) const {
    double total = 0.0;
    const std::size_t n = settings.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<int> r(n);
      int sign = 1;
      for (std::size_t k = 0; k < n; ++k) {
        r[k] = static_cast<int>((mask >> k) & 1u);
        if (r[k]) sign = -sign;
      }
      total += sign * probability(settings, r);
    }
    return total;
  }

  double objective(const Scenario& s) const {
    double total = 0.0;
    for (const auto& t : s.objective) {
      total += t.coefficient * (t.kind == tempora::TermKind::correlator
                                    ? correlator(t.sequence)
                                    : probability(t.sequence, t.outcomes));
    }
    return total;
  }

  // Re Tr[E(u) E(v)^dagger rho] over a list of words.
  tempora::MatrixXd moments(const std::vector<tempora::Word>& words) const {
    const auto n = static_cast<Eigen::Index>(words.size());
    tempora::MatrixXd x(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        x(i, j) = (word(words[static_cast<std::size_t>(i)]) *
                   word(words[static_cast<std::size_t>(j)]).adjoint() * rho)
                      .trace()
                      .real();
    return x;
  }
};

inline tempora::MatrixXcd random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  tempora::MatrixXcd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<tempora::MatrixXcd> qr(a);
  return qr.householderQ();
}

inline Model random_model(const Scenario& s, int dim, std::mt19937_64& rng, bool pure = false) {
  Model m;
  m.dim = dim;
  if (pure) {
    const tempora::MatrixXcd u = random_unitary(dim, rng);
    m.rho = u.col(0) * u.col(0).adjoint();
  } else {
    m.rho = random_density(dim, rng);
  }
  for (int i = 0; i < s.num_settings(); ++i) {
    const int count = s.outcome_count(i);
    const tempora::MatrixXcd u = random_unitary(dim, rng);
    // Random split of the basis into `count` blocks (some possibly empty).
    std::uniform_int_distribution<int> pick(0, count - 1);
    std::vector<tempora::MatrixXcd> p(static_cast<std::size_t>(count),
                                      tempora::MatrixXcd::Zero(dim, dim));
    for (int c = 0; c < dim; ++c) {
      const int a = c < count ? c : pick(rng);
      p[static_cast<std::size_t>(a)] += u.col(c) * u.col(c).adjoint();
    }
    m.proj.push_back(std::move(p));
  }
  return m;
}

}  // namespace testing_support
