#include "pwrc/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "pwrc/error.hpp"

namespace pwrc {

namespace {

constexpr std::array<char, 4> kModelMagic{'P', 'W', 'R', 'C'};
constexpr std::array<char, 4> kBlockMagic{'P', 'W', 'Z', 'B'};

// Guards allocations driven by header fields of untrusted files.
constexpr std::uint32_t kMaxDim = 1u << 20;

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(b.data(), b.size());
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  out.write(b.data(), b.size());
}

void get_bytes(std::istream& in, char* dst, std::size_t n) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) throw FormatError("unexpected end of file");
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  get_bytes(in, reinterpret_cast<char*>(b.data()), b.size());
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) {
  std::array<unsigned char, 8> b{};
  get_bytes(in, reinterpret_cast<char*>(b.data()), b.size());
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

std::uint32_t get_dim(std::istream& in, const char* what, bool allow_zero = false) {
  const std::uint32_t v = get_u32(in);
  if ((!allow_zero && v == 0) || v > kMaxDim) {
    throw FormatError(std::string("implausible ") + what + " " + std::to_string(v));
  }
  return v;
}

void put_matrix(std::ostream& out, const Matrix& A) {
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) put_f64(out, A(i, j));
}

Matrix get_matrix(std::istream& in, Eigen::Index rows, Eigen::Index cols) {
  Matrix A(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) A(i, j) = get_f64(in);
  return A;
}

void expect_magic(std::istream& in, const std::array<char, 4>& magic) {
  std::array<char, 4> got{};
  get_bytes(in, got.data(), got.size());
  if (got != magic) {
    throw FormatError("bad magic, expected " + std::string(magic.data(), magic.size()));
  }
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, std::ios::out | std::ios::trunc | mode);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ifstream in(path, std::ios::in | mode);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

long long parse_int(std::string_view s) {
  s = trim(s);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void EnsembleDataset::validate() const {
  if (m < 1 || n < 1 || q < 1) throw InvalidInput("dataset dimensions must be positive");
  for (std::size_t k = 0; k < signals.size(); ++k) {
    const Signal& s = signals[k];
    if (s.x.dim() != m || s.y.dim() != n || s.x.realizations() != q ||
        s.y.realizations() != q) {
      throw InvalidInput("signal " + std::to_string(k + 1) + " has inconsistent shape");
    }
    if (k > 0 && !(s.t > signals[k - 1].t)) {
      throw InvalidInput("signal times must be strictly increasing");
    }
  }
}

void write_csv(std::ostream& out, const Matrix& A) {
  out << A.rows() << ',' << A.cols() << '\n';
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(A(i, j));
    }
    out << '\n';
  }
}

Matrix read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("csv: missing header");
  const auto header = split(line, ',');
  if (header.size() != 2) throw FormatError("csv: header must be 'rows,cols'");
  const long long rows = parse_int(header[0]);
  const long long cols = parse_int(header[1]);
  if (rows < 1 || cols < 1 || rows > kMaxDim || cols > kMaxDim) {
    throw FormatError("csv: implausible shape " + line);
  }
  Matrix A(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw FormatError("csv: expected " + std::to_string(rows) + " rows");
    const auto fields = split(line, ',');
    if (static_cast<long long>(fields.size()) != cols) {
      throw FormatError("csv: row " + std::to_string(i + 1) + " has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(cols));
    }
    for (long long j = 0; j < cols; ++j) A(i, j) = parse_double(fields[j]);
  }
  return A;
}

void save_csv(const std::filesystem::path& path, const Matrix& A) {
  auto out = open_out(path);
  write_csv(out, A);
  if (!out) throw FormatError("write failed: " + path.string());
}

Matrix load_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_csv(in);
}

void write_model(std::ostream& out, const PiecewiseTransform& F) {
  out.write(kModelMagic.data(), kModelMagic.size());
  put_u32(out, kModelVersion);
  put_u32(out, static_cast<std::uint32_t>(F.m()));
  put_u32(out, static_cast<std::uint32_t>(F.n()));
  put_u32(out, static_cast<std::uint32_t>(F.q()));
  put_u32(out, static_cast<std::uint32_t>(F.knots().size()));
  put_u32(out, F.factorization() == Factorization::kScaledDecoder ? 0u : 1u);
  for (double t : F.knots().values()) put_f64(out, t);
  for (const SubTransform& s : F.subs()) {
    put_u32(out, static_cast<std::uint32_t>(s.rank));
    put_u32(out, static_cast<std::uint32_t>(s.spectrum.size()));
    put_f64(out, s.exx_trace);
    for (Eigen::Index i = 0; i < s.spectrum.size(); ++i) put_f64(out, s.spectrum(i));
    put_matrix(out, s.offset);
    put_matrix(out, s.decoder);
    put_matrix(out, s.encoder);
  }
}

PiecewiseTransform read_model(std::istream& in) {
  expect_magic(in, kModelMagic);
  const std::uint32_t version = get_u32(in);
  if (version != kModelVersion) throw FormatError("unsupported model version " + std::to_string(version));
  const Eigen::Index m = get_dim(in, "m");
  const Eigen::Index n = get_dim(in, "n");
  const Eigen::Index q = get_dim(in, "q");
  const std::uint32_t p = get_dim(in, "knot count");
  if (p < 2) throw FormatError("model needs at least two knots");
  const std::uint32_t mode = get_u32(in);
  if (mode > 1) throw FormatError("unknown factorization mode " + std::to_string(mode));

  std::vector<double> t(p);
  for (auto& v : t) v = get_f64(in);
  std::vector<SubTransform> subs(p - 1);
  for (std::uint32_t j = 0; j + 1 < p; ++j) {
    SubTransform& s = subs[j];
    s.index = j;
    s.t_begin = t[j];
    s.t_end = t[j + 1];
    s.rank = get_dim(in, "rank", true);
    if (s.rank > static_cast<std::size_t>(std::min(m, n))) {
      throw FormatError("rank " + std::to_string(s.rank) + " exceeds min(m, n)");
    }
    const std::uint32_t len = get_dim(in, "spectrum length", true);
    s.exx_trace = get_f64(in);
    s.spectrum.resize(len);
    for (std::uint32_t i = 0; i < len; ++i) s.spectrum(i) = get_f64(in);
    const auto r = static_cast<Eigen::Index>(s.rank);
    s.offset = get_matrix(in, m, q);
    s.decoder = get_matrix(in, m, r);
    s.encoder = get_matrix(in, r, n);
  }
  try {
    return PiecewiseTransform(Knots(std::move(t)), std::move(subs), m, n, q,
                              mode == 0 ? Factorization::kScaledDecoder
                                        : Factorization::kOrthonormalDecoder);
  } catch (const InvalidInput& e) {
    throw FormatError(std::string("inconsistent model: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const PiecewiseTransform& F) {
  auto out = open_out(path, std::ios::binary);
  write_model(out, F);
  if (!out) throw FormatError("write failed: " + path.string());
}

PiecewiseTransform load_model(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  return read_model(in);
}

void write_block(std::ostream& out, const CompressedBlock& block) {
  out.write(kBlockMagic.data(), kBlockMagic.size());
  put_u32(out, kBlockVersion);
  put_u32(out, static_cast<std::uint32_t>(block.interval));
  put_u32(out, static_cast<std::uint32_t>(block.payload.rows()));
  put_u32(out, static_cast<std::uint32_t>(block.payload.cols()));
  put_f64(out, block.t);
  put_matrix(out, block.payload);
}

CompressedBlock read_block(std::istream& in) {
  expect_magic(in, kBlockMagic);
  const std::uint32_t version = get_u32(in);
  if (version != kBlockVersion) throw FormatError("unsupported block version " + std::to_string(version));
  CompressedBlock block;
  block.interval = get_u32(in);
  const Eigen::Index rows = get_dim(in, "payload rows", true);
  const Eigen::Index cols = get_dim(in, "payload cols");
  block.t = get_f64(in);
  block.payload = get_matrix(in, rows, cols);
  return block;
}

void save_block(const std::filesystem::path& path, const CompressedBlock& block) {
  auto out = open_out(path, std::ios::binary);
  write_block(out, block);
  if (!out) throw FormatError("write failed: " + path.string());
}

CompressedBlock load_block(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  return read_block(in);
}

void save_dataset(const std::filesystem::path& dir, const EnsembleDataset& data) {
  data.validate();
  std::filesystem::create_directories(dir);
  auto index = open_out(dir / "index.csv");
  index << "k,t,x,y\n";
  for (std::size_t k = 0; k < data.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "%04zu", k + 1);
    const std::string x = std::string("X_") + name + ".csv";
    const std::string y = std::string("Y_") + name + ".csv";
    save_csv(dir / x, data.signals[k].x.data());
    save_csv(dir / y, data.signals[k].y.data());
    index << (k + 1) << ',' << format_double(data.signals[k].t) << ',' << x << ',' << y << '\n';
  }
  if (!index) throw FormatError("write failed: " + (dir / "index.csv").string());
}

EnsembleDataset load_dataset(const std::filesystem::path& dir) {
  auto index = open_in(dir / "index.csv");
  std::string line;
  if (!std::getline(index, line) || trim(line) != "k,t,x,y") {
    throw FormatError("index.csv: expected header 'k,t,x,y'");
  }
  EnsembleDataset data;
  while (std::getline(index, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 4) throw FormatError("index.csv: malformed row '" + line + "'");
    Signal s;
    s.t = parse_double(fields[1]);
    try {
      s.x = SampleMatrix(load_csv(dir / std::string(trim(fields[2]))));
      s.y = SampleMatrix(load_csv(dir / std::string(trim(fields[3]))));
    } catch (const InvalidInput& e) {
      throw FormatError(std::string("dataset: ") + e.what());
    }
    data.signals.push_back(std::move(s));
  }
  if (data.signals.empty()) throw FormatError("dataset has no signals");
  data.m = data.signals.front().x.dim();
  data.n = data.signals.front().y.dim();
  data.q = data.signals.front().x.realizations();
  data.validate();
  return data;
}

}  // namespace pwrc
