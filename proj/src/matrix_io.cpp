#include "hamcoh/matrix_io.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <vector>

namespace hamcoh {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

void write_matrix(std::ostream& out, const SparseExactMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ';
  if (m.field().is_rational()) {
    out << "QQ\n";
    for (const auto& e : m.rational_entries())
      out << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value.get_str() << '\n';
  } else {
    out << m.field().modulus() << '\n';
    for (const auto& e : m.residue_entries()) out << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
  }
  out << "0 0 0\n";
}

namespace {

std::size_t parse_index(const std::string& token, std::size_t line, const char* what) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, std::string("invalid ") + what + " '" + token + "'");
  try {
    return std::stoull(token);
  } catch (const std::exception&) {
    throw ParseError(line, std::string(what) + " out of range '" + token + "'");
  }
}

std::vector<std::string> split(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  return tokens;
}

}  // namespace

SparseExactMatrix read_matrix(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  if (!std::getline(in, text)) throw ParseError(1, "missing header");
  ++line;
  auto header = split(text);
  if (header.size() != 3) throw ParseError(line, "header must be 'rows cols field'");
  const std::size_t rows = parse_index(header[0], line, "row count");
  const std::size_t cols = parse_index(header[1], line, "column count");
  std::optional<std::uint64_t> prime;
  if (header[2] != "QQ") {
    const auto p = parse_index(header[2], line, "field");
    try {
      Field::prime(p);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
    prime = p;
  }

  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<RationalTriplet> rational;
  std::vector<ResidueTriplet> residues;
  bool terminated = false;
  while (std::getline(in, text)) {
    ++line;
    auto tok = split(text);
    if (tok.empty()) throw ParseError(line, "blank line");
    if (terminated) throw ParseError(line, "content after terminator");
    if (tok.size() != 3) throw ParseError(line, "entry must be 'row col value'");
    if (tok[0] == "0" && tok[1] == "0" && tok[2] == "0") {
      terminated = true;
      continue;
    }
    const std::size_t r = parse_index(tok[0], line, "row");
    const std::size_t c = parse_index(tok[1], line, "column");
    if (r < 1 || r > rows || c < 1 || c > cols) throw ParseError(line, "index outside matrix shape");
    if (!seen.emplace(r, c).second) throw ParseError(line, "duplicate entry (" + tok[0] + ", " + tok[1] + ")");
    if (prime) {
      const auto v = parse_index(tok[2], line, "residue");
      if (v >= *prime) throw ParseError(line, "residue not reduced modulo " + std::to_string(*prime));
      if (v == 0) throw ParseError(line, "explicit zero entry");
      residues.push_back({r - 1, c - 1, v});
    } else {
      Rational q;
      try {
        q = parse_rational(tok[2]);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
      }
      if (q == 0) throw ParseError(line, "explicit zero entry");
      rational.push_back({r - 1, c - 1, q});
    }
  }
  if (!terminated) throw ParseError(line + 1, "missing terminator line '0 0 0'");
  if (prime) return SparseExactMatrix::from_triplets(rows, cols, *prime, std::move(residues));
  return SparseExactMatrix::from_triplets(rows, cols, std::move(rational));
}

void save_matrix(const std::filesystem::path& path, const SparseExactMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_matrix(out, m);
}

SparseExactMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_matrix(in);
}

std::string CacheKey::stem() const {
  std::ostringstream s;
  s << kind << "_n" << n << "_w" << weight << "_d" << degree << '_' << scope << (torus_zero ? "_t0" : "");
  return s.str();
}

std::string CacheKey::canonical() const {
  std::ostringstream s;
  s << "hamcoh-cache kind=" << kind << " n=" << n << " degree=" << degree << " weight=" << weight
    << " scope=" << scope << " torus_zero=" << torus_zero << " order_version=" << kMonomialOrderVersion;
  return s.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

MatrixCache::MatrixCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<std::filesystem::path> MatrixCache::default_directory() {
  if (const char* env = std::getenv("HAMCOH_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

std::optional<SparseExactMatrix> MatrixCache::load(const CacheKey& key) const {
  const auto mtx = dir_ / (key.stem() + ".mtx");
  const auto sidecar = dir_ / (key.stem() + ".sha256");
  std::ifstream in(mtx, std::ios::binary), digest_in(sidecar);
  if (!in || !digest_in) return std::nullopt;
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::string key_digest, content_digest;
  digest_in >> key_digest >> content_digest;
  if (key_digest != sha256_hex(key.canonical()) || content_digest != sha256_hex(contents)) return std::nullopt;
  std::istringstream parse(contents);
  try {
    return read_matrix(parse);
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

void MatrixCache::store(const CacheKey& key, const SparseExactMatrix& m) const {
  std::ostringstream text;
  write_matrix(text, m);
  const std::string contents = text.str();
  const auto mtx = dir_ / (key.stem() + ".mtx");
  {
    std::ofstream out(mtx, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + mtx.string());
    out << contents;
  }
  std::ofstream sidecar(dir_ / (key.stem() + ".sha256"));
  sidecar << sha256_hex(key.canonical()) << '\n' << sha256_hex(contents) << '\n';
}

std::size_t MatrixCache::clear() const {
  std::size_t removed = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    const auto ext = entry.path().extension();
    if (ext == ".mtx" || ext == ".sha256") removed += std::filesystem::remove(entry.path()) ? 1 : 0;
  }
  return removed;
}

}  // namespace hamcoh
