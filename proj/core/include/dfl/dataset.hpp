#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dfl/model.hpp"

namespace dfl {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw range-azimuth magnitude maps. 256 range bins x 63 azimuth bins per
// sample, non-negative, labels in 0..5.
inline constexpr int kRangeBins = 256;
inline constexpr int kAzimuthBins = 63;
inline constexpr int kMapSize = kRangeBins * kAzimuthBins;

struct RadarDataset {
  std::vector<float> train_maps;  // n_train x 256 x 63, row-major
  std::vector<int> train_labels;
  std::vector<float> test_maps;  // n_test x 256 x 63
  std::vector<int> test_labels;

  int n_train() const { return static_cast<int>(train_labels.size()); }
  int n_test() const { return static_cast<int>(test_labels.size()); }
};

// Pooled (4x3 average), mean-subtracted, max-scaled features. The mean and
// scale always come from the training split.
struct FeatureSet {
  std::vector<double> features;  // size() x kInputDim
  std::vector<int> labels;
  std::vector<double> mean;  // per-feature training mean (1344)
  double scale = 1.0;        // training max |pooled - mean|

  int size() const { return static_cast<int>(labels.size()); }
};

// One Gaussian target blob per class on a 2 (range) x 3 (azimuth) grid of
// centers, per-sample center jitter, clamped pixel noise. The defaults are
// what the stock experiment configs use.
struct SynthParams {
  double amplitude = 1.0;
  double blob_std = 8.0;
  double noise_std = 0.8;
  double center_jitter_std = 6.0;
};

// Class c -> (range_center, azimuth_center).
std::pair<double, double> synth_class_center(int cls);

// per_class samples per class for each split (train and test drawn
// independently); bit-identical for equal (per_class, seed, params).
RadarDataset gen_synthetic(int per_class, std::uint64_t seed, const SynthParams& params = {});

// Directory format: manifest.txt lines "name dims... dtype"; tensors stored
// row-major little-endian as train.f32 / test.f32 (float32) and
// train_labels.u8 / test_labels.u8 (uint8).
RadarDataset load_radar(const std::filesystem::path& dir);
void save_radar(const RadarDataset& ds, const std::filesystem::path& dir);

// Pool 256x63 -> 64x21, subtract the per-feature training mean, divide by
// the training max absolute value. Test features use the training stats.
std::pair<FeatureSet, FeatureSet> preprocess(const RadarDataset& ds);

}  // namespace dfl
