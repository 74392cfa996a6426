#pragma once
// Seeded Haar sampling on the catalog components and their cosets.
//
// Streams are split into fixed-size chunks, each driven by its own
// mt19937_64 seeded through SplitMix64(seed, chunk), so results do not depend
// on how chunks are distributed over threads.

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "stg/axioms.hpp"
#include "stg/catalog.hpp"

namespace stg {

using NumMatrix = Eigen::Matrix<std::complex<double>, 6, 6>;

struct SampleConfig {
    uint64_t seed = 42;
    long n_samples = 100000;
    std::optional<ExactMatrix> coset_rep;
};

uint64_t splitmix64(uint64_t x);

NumMatrix to_numeric(const ExactMatrix& m);

// One Haar-random element of the component per call.
class HaarSampler {
public:
    HaarSampler(const ConnectedComponentDescriptor& c, uint64_t seed, uint64_t stream = 0);
    NumMatrix next();

private:
    const ConnectedComponentDescriptor* c_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    void place_factor(const ComponentFactor& f, NumMatrix& m);
};

// The first n samples of the coset A G0 (A = identity when absent).
std::vector<NumMatrix> haar_sample(const ConnectedComponentDescriptor& c, const SampleConfig& config);

// e1, e2, e3 of a 6x6 matrix (traces on C^6, Lambda^2, Lambda^3).
std::array<std::complex<double>, 3> elementary_traces(const NumMatrix& m);
std::complex<double> evaluate_character(const CharacterSpec& chi, const NumMatrix& m);

struct EmpiricalAverage {
    double mean = 0, mean_imag = 0, std_error = 0, std_error_imag = 0;
    long n = 0;
};

EmpiricalAverage empirical_average(const ConnectedComponentDescriptor& c, const CharacterSpec& chi,
                                   const SampleConfig& config);
// Average over the coset coset_index of a candidate.
EmpiricalAverage empirical_average(const CandidateGroup& g, int coset_index, const CharacterSpec& chi,
                                   const SampleConfig& config);

// Distance in units of std_error from the nearest integer (and imaginary part from 0).
bool consistent_with_integer(const EmpiricalAverage& a, double sigmas = 3.0);

}  // namespace stg
