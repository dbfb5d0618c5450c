#include "dfl/dataset.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "dfl/rng.hpp"

namespace dfl {

namespace {

constexpr int kPoolRange = 4;    // 256 -> 64
constexpr int kPoolAzimuth = 3;  // 63 -> 21
constexpr int kPooledRange = kRangeBins / kPoolRange;
constexpr int kPooledAzimuth = kAzimuthBins / kPoolAzimuth;
static_assert(kPooledRange * kPooledAzimuth == kInputDim);

void gen_split(std::vector<float>& maps, std::vector<int>& labels, int per_class,
               const SynthParams& p, Rng& rng) {
  maps.resize(static_cast<std::size_t>(per_class) * kNumClasses * kMapSize);
  labels.resize(static_cast<std::size_t>(per_class) * kNumClasses);
  const double inv_two_var = 1.0 / (2.0 * p.blob_std * p.blob_std);
  std::size_t s = 0;
  for (int cls = 0; cls < kNumClasses; ++cls) {
    const auto [rc, ac] = synth_class_center(cls);
    for (int rep = 0; rep < per_class; ++rep, ++s) {
      const double r0 = rc + rng.normal(0.0, p.center_jitter_std);
      const double a0 = ac + rng.normal(0.0, p.center_jitter_std);
      float* dst = &maps[s * kMapSize];
      for (int r = 0; r < kRangeBins; ++r) {
        const double dr = r - r0;
        for (int a = 0; a < kAzimuthBins; ++a) {
          const double da = a - a0;
          const double blob = p.amplitude * std::exp(-(dr * dr + da * da) * inv_two_var);
          const double v = blob + rng.normal(0.0, p.noise_std);
          dst[r * kAzimuthBins + a] = static_cast<float>(v > 0.0 ? v : 0.0);
        }
      }
      labels[s] = cls;
    }
  }
}

void pool_split(const std::vector<float>& maps, int n, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(n) * kInputDim);
  constexpr double inv_cells = 1.0 / (kPoolRange * kPoolAzimuth);
  for (int s = 0; s < n; ++s) {
    const float* src = &maps[static_cast<std::size_t>(s) * kMapSize];
    double* dst = &out[static_cast<std::size_t>(s) * kInputDim];
    for (int pr = 0; pr < kPooledRange; ++pr) {
      for (int pa = 0; pa < kPooledAzimuth; ++pa) {
        double sum = 0.0;
        for (int r = pr * kPoolRange; r < (pr + 1) * kPoolRange; ++r)
          for (int a = pa * kPoolAzimuth; a < (pa + 1) * kPoolAzimuth; ++a)
            sum += src[r * kAzimuthBins + a];
        dst[pr * kPooledAzimuth + pa] = sum * inv_cells;
      }
    }
  }
}

void write_binary(const std::filesystem::path& path, const void* data, std::size_t bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot open for writing: " + path.string());
  f.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
  if (!f) throw DataError("write failed: " + path.string());
}

std::vector<char> read_binary(const std::filesystem::path& path, std::size_t expected_bytes) {
  std::ifstream f(path, std::ios::binary | std::ios::ate);
  if (!f) throw DataError("missing tensor file: " + path.string());
  const auto size = static_cast<std::size_t>(f.tellg());
  if (size != expected_bytes) {
    std::ostringstream msg;
    msg << "size mismatch for " << path.string() << ": manifest implies " << expected_bytes
        << " bytes, file has " << size;
    throw DataError(msg.str());
  }
  std::vector<char> buf(size);
  f.seekg(0);
  f.read(buf.data(), static_cast<std::streamsize>(size));
  if (!f) throw DataError("read failed: " + path.string());
  return buf;
}

struct ManifestEntry {
  std::vector<std::size_t> dims;
  std::string dtype;
};

std::map<std::string, ManifestEntry> read_manifest(const std::filesystem::path& dir) {
  std::ifstream f(dir / "manifest.txt");
  if (!f) throw DataError("missing manifest.txt in " + dir.string());
  std::map<std::string, ManifestEntry> entries;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::vector<std::string> tok;
    std::string t;
    while (ss >> t) tok.push_back(t);
    if (tok.size() < 3) throw DataError("malformed manifest line: " + line);
    ManifestEntry e;
    e.dtype = tok.back();
    for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
      const long v = std::stol(tok[i]);
      if (v <= 0) throw DataError("non-positive dimension in manifest line: " + line);
      e.dims.push_back(static_cast<std::size_t>(v));
    }
    entries[tok[0]] = std::move(e);
  }
  return entries;
}

std::size_t dim_product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

void load_maps(const std::filesystem::path& dir, const std::string& name,
               const ManifestEntry& e, std::vector<float>& out) {
  if (e.dtype != "f32") throw DataError(name + ": expected dtype f32, got " + e.dtype);
  if (e.dims.size() != 3 || e.dims[1] != kRangeBins || e.dims[2] != kAzimuthBins) {
    std::ostringstream msg;
    msg << name << ": expected shape N " << kRangeBins << " " << kAzimuthBins;
    throw DataError(msg.str());
  }
  const std::size_t count = dim_product(e.dims);
  auto buf = read_binary(dir / (name + ".f32"), count * sizeof(float));
  out.resize(count);
  std::memcpy(out.data(), buf.data(), buf.size());
  for (float v : out)
    if (!std::isfinite(v) || v < 0.0f)
      throw DataError(name + ": maps must be finite and non-negative");
}

void load_labels(const std::filesystem::path& dir, const std::string& name,
                 const ManifestEntry& e, std::size_t expected_n, std::vector<int>& out) {
  if (e.dtype != "u8") throw DataError(name + ": expected dtype u8, got " + e.dtype);
  if (e.dims.size() != 1 || e.dims[0] != expected_n)
    throw DataError(name + ": label count does not match map count");
  auto buf = read_binary(dir / (name + ".u8"), expected_n);
  out.resize(expected_n);
  for (std::size_t i = 0; i < expected_n; ++i) {
    const int v = static_cast<unsigned char>(buf[i]);
    if (v >= kNumClasses) throw DataError(name + ": label outside 0..5");
    out[i] = v;
  }
}

}  // namespace

std::pair<double, double> synth_class_center(int cls) {
  static constexpr double range_centers[2] = {72.0, 168.0};
  static constexpr double azimuth_centers[3] = {12.0, 31.0, 50.0};
  return {range_centers[cls / 3], azimuth_centers[cls % 3]};
}

RadarDataset gen_synthetic(int per_class, std::uint64_t seed, const SynthParams& params) {
  if (per_class < 1) throw std::invalid_argument("gen_synthetic: per_class must be >= 1");
  RadarDataset ds;
  Rng train_rng(derive_seed(seed, 0x21));
  Rng test_rng(derive_seed(seed, 0x22));
  gen_split(ds.train_maps, ds.train_labels, per_class, params, train_rng);
  gen_split(ds.test_maps, ds.test_labels, per_class, params, test_rng);
  return ds;
}

RadarDataset load_radar(const std::filesystem::path& dir) {
  auto manifest = read_manifest(dir);
  for (const char* name : {"train", "train_labels", "test", "test_labels"})
    if (!manifest.count(name)) throw DataError(std::string("manifest misses tensor: ") + name);

  RadarDataset ds;
  load_maps(dir, "train", manifest.at("train"), ds.train_maps);
  load_maps(dir, "test", manifest.at("test"), ds.test_maps);
  load_labels(dir, "train_labels", manifest.at("train_labels"),
              manifest.at("train").dims[0], ds.train_labels);
  load_labels(dir, "test_labels", manifest.at("test_labels"), manifest.at("test").dims[0],
              ds.test_labels);
  return ds;
}

void save_radar(const RadarDataset& ds, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream mf(dir / "manifest.txt", std::ios::trunc);
  if (!mf) throw DataError("cannot write manifest in " + dir.string());
  mf << "train " << ds.n_train() << " " << kRangeBins << " " << kAzimuthBins << " f32\n"
     << "train_labels " << ds.n_train() << " u8\n"
     << "test " << ds.n_test() << " " << kRangeBins << " " << kAzimuthBins << " f32\n"
     << "test_labels " << ds.n_test() << " u8\n";
  mf.close();

  write_binary(dir / "train.f32", ds.train_maps.data(), ds.train_maps.size() * sizeof(float));
  write_binary(dir / "test.f32", ds.test_maps.data(), ds.test_maps.size() * sizeof(float));
  auto labels_u8 = [](const std::vector<int>& labels) {
    std::vector<unsigned char> u(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) u[i] = static_cast<unsigned char>(labels[i]);
    return u;
  };
  const auto tr = labels_u8(ds.train_labels);
  const auto te = labels_u8(ds.test_labels);
  write_binary(dir / "train_labels.u8", tr.data(), tr.size());
  write_binary(dir / "test_labels.u8", te.data(), te.size());
}

std::pair<FeatureSet, FeatureSet> preprocess(const RadarDataset& ds) {
  if (ds.n_train() < 1 || ds.n_test() < 1) throw DataError("preprocess: empty split");

  FeatureSet train, test;
  pool_split(ds.train_maps, ds.n_train(), train.features);
  pool_split(ds.test_maps, ds.n_test(), test.features);
  train.labels = ds.train_labels;
  test.labels = ds.test_labels;

  // Background subtraction surrogate: remove the per-feature training mean.
  // Averaging commutes with mean pooling, so pooled-then-subtracted equals
  // subtracted-then-pooled.
  train.mean.assign(kInputDim, 0.0);
  for (int s = 0; s < train.size(); ++s) {
    const double* row = &train.features[static_cast<std::size_t>(s) * kInputDim];
    for (int i = 0; i < kInputDim; ++i) train.mean[i] += row[i];
  }
  const double inv_n = 1.0 / train.size();
  for (double& v : train.mean) v *= inv_n;

  double max_abs = 0.0;
  for (int s = 0; s < train.size(); ++s) {
    double* row = &train.features[static_cast<std::size_t>(s) * kInputDim];
    for (int i = 0; i < kInputDim; ++i) {
      row[i] -= train.mean[i];
      max_abs = std::max(max_abs, std::abs(row[i]));
    }
  }
  const double scale = max_abs > 0.0 ? max_abs : 1.0;
  const double inv_scale = 1.0 / scale;
  for (double& v : train.features) v *= inv_scale;

  for (int s = 0; s < test.size(); ++s) {
    double* row = &test.features[static_cast<std::size_t>(s) * kInputDim];
    for (int i = 0; i < kInputDim; ++i) row[i] = (row[i] - train.mean[i]) * inv_scale;
  }

  train.scale = test.scale = scale;
  test.mean = train.mean;
  return {std::move(train), std::move(test)};
}

}  // namespace dfl
