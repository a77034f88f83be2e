#pragma once

#include "negwit/wigner_witness.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace negwit {

using Complex = std::complex<double>;

struct PureStateFock {
  std::vector<Complex> amplitudes;
  double norm() const;
};

struct MixedDiagonal {
  FockDiagonal F;
};

using CvState = std::variant<PureStateFock, MixedDiagonal>;

// <k|D(alpha)|l>
Complex displacement_element(int k, int l, Complex alpha);
// Direct evaluation of the finite sum; loses accuracy for large k, l, |alpha|.
Complex displacement_element_sum(int k, int l, Complex alpha);

int default_cutoff(int n_max, Complex alpha);

struct StateSpec {
  std::string kind;  // pssvs, cat2, cat4, coherent, fock, lossy_fock
  double r = 0.0;
  Complex alpha{0.0, 0.0};
  int n = 0;
  double eta = 0.0;
};

// "cat2:alpha=1.4+0i", "lossy_fock:n=3,eta=0.2", "pssvs:r=0.5"
StateSpec parse_state_spec(const std::string& text);
CvState named_state(const StateSpec& spec);

// Probability of D(alpha)|k> in the state.
double displaced_fidelity(const CvState& state, int k, Complex alpha);
// Fock populations (alpha = 0).
std::vector<double> fock_populations(const CvState& state);

// W at |alpha| = r for a rotation-invariant state.
double wigner_radial(const MixedDiagonal& state, double r);

double witness_expectation(const CvState& state, const WitnessSpec& spec);

// expectation - threshold when positive
std::optional<double> violation_and_distance(double expectation, double upper_threshold);

// Sign changes of f - level on [lo, hi], refined by bracketing.
std::vector<double> level_crossings(const std::function<double(double)>& f, double level, double lo, double hi,
                                    int grid = 400);

}  // namespace negwit
