#include "wavelab/cache.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace wavelab {

namespace {

constexpr char kMagic[8] = {'W', 'L', 'E', 'I', 'G', '0', '0', '1'};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string canonical_value(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) return t;
  double v = 0.0;
  const char* first = t.data();
  if (*first == '+') ++first;
  auto res = std::from_chars(first, t.data() + t.size(), v);
  if (res.ec == std::errc() && res.ptr == t.data() + t.size()) {
    if (v == 0.0) v = 0.0;  // -0 and 0 agree
    return shortest(v);
  }
  return t;
}

std::string cache_key(const std::map<std::string, std::string>& section) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& [k, v] : section) {
    std::string item = trim(k) + "=" + canonical_value(v) + ";";
    for (unsigned char c : item) {
      h ^= c;
      h *= 1099511628211ull;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::map<std::string, std::string> operator_section(const DiscreteOperator& op) {
  std::map<std::string, std::string> s;
  s["n"] = shortest(op.n);
  s["R"] = shortest(op.grid.R);
  s["M"] = shortest(op.grid.M);
  if (op.potential) {
    s["c"] = shortest(op.potential->c);
    s["delta"] = shortest(op.potential->delta);
  } else {
    s["c"] = "0";
  }
  return s;
}

void save_eigenpairs(const std::string& path, const Eigenpairs& eig) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("save_eigenpairs: cannot write " + tmp);
    std::int64_t m = eig.values.size();
    os.write(kMagic, sizeof kMagic);
    os.write(reinterpret_cast<const char*>(&m), sizeof m);
    os.write(reinterpret_cast<const char*>(&eig.residual), sizeof(double));
    os.write(reinterpret_cast<const char*>(eig.values.data()), m * sizeof(double));
    os.write(reinterpret_cast<const char*>(eig.vectors.data()), m * m * sizeof(double));
    if (!os) throw std::runtime_error("save_eigenpairs: short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Eigenpairs> load_eigenpairs(const std::string& path, int expected_size) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return std::nullopt;
  char magic[8];
  std::int64_t m = 0;
  double residual = 0.0;
  is.read(magic, sizeof magic);
  is.read(reinterpret_cast<char*>(&m), sizeof m);
  is.read(reinterpret_cast<char*>(&residual), sizeof residual);
  if (!is || !std::equal(magic, magic + 8, kMagic) || m != expected_size) return std::nullopt;
  Eigenpairs e;
  e.residual = residual;
  e.values.resize(m);
  e.vectors.resize(m, m);
  is.read(reinterpret_cast<char*>(e.values.data()), m * sizeof(double));
  is.read(reinterpret_cast<char*>(e.vectors.data()), m * m * sizeof(double));
  if (!is) return std::nullopt;
  return e;
}

Eigenpairs cached_decompose(const DiscreteOperator& op, const std::string& dir) {
  if (dir.empty()) return spectral_decompose(op);
  std::string path = (std::filesystem::path(dir) / (cache_key(operator_section(op)) + ".eig")).string();
  if (auto hit = load_eigenpairs(path, op.size())) return *hit;
  Eigenpairs e = spectral_decompose(op);
  save_eigenpairs(path, e);
  return e;
}

}  // namespace wavelab
