#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mquant/fock.hpp"
#include "mquant/random.hpp"

#include "json.hpp"

namespace mq {

// A question with n mutually exclusive outcomes: the classical level-0
// object of the quantization tower.
struct Alternative {
  int n = 2;
  std::vector<std::string> labels;

  static Alternative make(int n);
  static Alternative make(std::vector<std::string> labels);
};

// Normalized complex amplitudes over an alternative (level-1 state).
class TruthVector {
 public:
  TruthVector(Alternative alt, std::vector<cxd> psi);

  const Alternative& alternative() const { return alt_; }
  const std::vector<cxd>& amplitudes() const { return psi_; }
  int n() const { return alt_.n; }

 private:
  Alternative alt_;
  std::vector<cxd> psi_;
};

// |psi_k|^2, 1-based outcome index.
double probability(const TruthVector& state, int k);

// One quantization step: a Fock space with one mode per basis element of
// the level below.
SpacePtr lift(const Alternative& alt, FockStatistics stats,
              std::size_t max_dim = FockSpace::kDefaultMaxDim);
SpacePtr lift(const FockSpace& below, FockStatistics stats,
              std::size_t max_dim = FockSpace::kDefaultMaxDim);

// Normalized n-quantum collective (sum_k psi_k a_k^+)^n |0> / sqrt(n!) on a
// Bose space; amplitudes are the multinomial expansion, so the state lies
// exactly in the total-occupation-n sector.
StateVector symmetric_product_state(const SpacePtr& space, const std::vector<cxd>& psi, int n);

// One-quantum collective sum_k psi_k (creator of logical mode k)|0>,
// normalized. Defined for every statistics; for parabose spaces the
// creator is the composite over Green components.
StateVector one_quantum_state(const SpacePtr& space, const std::vector<cxd>& psi);

// Distribution of the relative frequency f_k = n_k/n over the
// total-occupation-n sector of a state.
struct FrequencySpectrum {
  int k = 1;       // logical mode, 1-based
  int sector = 0;  // n
  struct Point {
    int count;    // n_k = m
    double prob;  // p(f_k = m/n)
  };
  std::vector<Point> support;  // m = 0..n

  double expectation() const {
    if (sector == 0) return 0.0;
    double e = 0.0;
    for (const auto& p : support)
      e += p.prob * (static_cast<double>(p.count) / static_cast<double>(sector));
    return e;
  }
};

FrequencySpectrum frequency_spectrum(const StateVector& state, int k, int sector,
                                     double leak_tol = 1e-10);

// The tower itself: level 0 is the alternative, level 1 its truth-vector
// space, and each configured lift adds a Fock level.
struct TowerLevel {
  std::string name;
  std::size_t dim = 0;
  std::string statistics;  // "alternative", "amplitudes", or FockStatistics::str()
  int cutoff = -1;         // -1 when not applicable
  SpacePtr space;          // null for levels 0 and 1
};

struct QuantizationTower {
  Alternative base;
  std::vector<FockStatistics> lifts;
  std::vector<TowerLevel> levels;
};

QuantizationTower build_tower(const Alternative& base, const std::vector<FockStatistics>& lifts,
                              std::size_t max_dim = FockSpace::kDefaultMaxDim);

// Max over random truth vectors, logical modes, and sectors of
// |E(f_k) - |psi_k|^2| for collective states on the given space. Bose
// spaces run sectors 1..min(cutoff, max_sector); Fermi and parabose spaces
// run the one-quantum sector.
double frequency_identity_deviation(const SpacePtr& space, int draws, std::uint64_t seed,
                                    int max_sector = 3);

// Report per level: dimension, statistics, the collective interpretation,
// and the frequency-identity deviation for Fock levels.
nlohmann::json tower_report(const QuantizationTower& tower, int draws, std::uint64_t seed,
                            int max_sector = 3);

}  // namespace mq
