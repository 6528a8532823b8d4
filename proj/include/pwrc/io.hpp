#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pwrc/linalg.hpp"
#include "pwrc/signal.hpp"
#include "pwrc/transform.hpp"

namespace pwrc {

// Ensemble of N signals sharing dimensions, ordered by strictly increasing t.
struct EnsembleDataset {
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  Eigen::Index q = 0;
  std::vector<Signal> signals;

  std::size_t size() const { return signals.size(); }
  // Throws InvalidInput on inconsistent shapes or non-increasing times.
  void validate() const;
};

// Matrix CSV: first line "rows,cols", then one row per line, values printed
// with 17 significant digits.
void write_csv(std::ostream& out, const Matrix& A);
Matrix read_csv(std::istream& in);
void save_csv(const std::filesystem::path& path, const Matrix& A);
Matrix load_csv(const std::filesystem::path& path);

// Model file, little-endian:
//   "PWRC" u32 version u32 m u32 n u32 q u32 p u32 factorization
//   f64 knots[p]
//   per interval: u32 r u32 s f64 exx_trace f64 spectrum[s]
//                 f64 offset[m*q] f64 decoder[m*r] f64 encoder[r*n]
// Matrices are row-major.
inline constexpr std::uint32_t kModelVersion = 1;
void write_model(std::ostream& out, const PiecewiseTransform& F);
PiecewiseTransform read_model(std::istream& in);
void save_model(const std::filesystem::path& path, const PiecewiseTransform& F);
PiecewiseTransform load_model(const std::filesystem::path& path);

// Block file, little-endian:
//   "PWZB" u32 version u32 interval u32 rows u32 cols f64 t f64 payload[rows*cols]
inline constexpr std::uint32_t kBlockVersion = 1;
void write_block(std::ostream& out, const CompressedBlock& block);
CompressedBlock read_block(std::istream& in);
void save_block(const std::filesystem::path& path, const CompressedBlock& block);
CompressedBlock load_block(const std::filesystem::path& path);

// Dataset directory: index.csv with header "k,t,x,y" and one row per signal
// naming its X and Y matrix CSV files relative to the directory.
void save_dataset(const std::filesystem::path& dir, const EnsembleDataset& data);
EnsembleDataset load_dataset(const std::filesystem::path& dir);

}  // namespace pwrc
