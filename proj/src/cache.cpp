#include "cuspsum/cache.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <tuple>

#include "cuspsum/errors.hpp"

namespace cuspsum {

std::string recipe_digest(const CuspForm& f) {
  std::vector<RecipeTerm> terms = f.terms;
  std::sort(terms.begin(), terms.end(), [](const RecipeTerm& x, const RecipeTerm& y) {
    return std::tie(x.dpow, x.e4pow, x.e6pow) < std::tie(y.dpow, y.e4pow, y.e6pow);
  });
  std::string d = "k" + std::to_string(f.weight);
  for (const auto& t : terms)
    d += ";" + t.coeff.get_str() + "." + std::to_string(t.dpow) + "." + std::to_string(t.e4pow) +
         "." + std::to_string(t.e6pow);
  return d;
}

std::filesystem::path cache_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("CUSPSUM_CACHE_DIR"); env && *env) return env;
  return ".cuspsum-cache";
}

std::filesystem::path cache_file(const std::filesystem::path& dir, const CuspForm& f) {
  std::string name = recipe_digest(f);
  for (char& ch : name)
    if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
  return dir / (name + ".coeffs");
}

bool cache_probe(const std::filesystem::path& dir, const CuspForm& f, long N) {
  std::ifstream in(cache_file(dir, f));
  if (!in) return false;
  unsigned k = 0;
  long order = 0;
  std::string digest;
  if (!(in >> k >> order >> digest)) return false;
  return k == f.weight && digest == recipe_digest(f) && order >= N;
}

void cache_store(const std::filesystem::path& dir, const CuspForm& f, const IntSeries& s) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::filesystem::path tmp = cache_file(dir, f);
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw usage_error("cannot write cache file " + tmp.string());
    out << f.weight << " " << s.order << " " << recipe_digest(f) << "\n";
    for (long n = 1; n <= s.order; ++n) out << s[n].get_str() << "\n";
  }
  std::filesystem::rename(tmp, cache_file(dir, f));
}

std::optional<FormTable> cache_load(const std::filesystem::path& dir, const CuspForm& f, long N) {
  std::ifstream in(cache_file(dir, f));
  if (!in) return std::nullopt;
  unsigned k = 0;
  long order = 0;
  std::string digest;
  if (!(in >> k >> order >> digest)) return std::nullopt;
  if (k != f.weight || digest != recipe_digest(f) || order < N) return std::nullopt;
  IntSeries s(N);
  std::string line;
  for (long n = 1; n <= N; ++n) {
    if (!(in >> line)) return std::nullopt;
    s[n] = mpz_class(line);
  }
  return table_from_coeffs(f, std::move(s));
}

FormTable load_or_build(const CuspForm& f, long N, const std::optional<std::string>& dir_flag) {
  std::filesystem::path dir = cache_dir(dir_flag);
  if (auto t = cache_load(dir, f, N)) return std::move(*t);
  IntSeries s = form_coeffs(f, N);
  cache_store(dir, f, s);
  return table_from_coeffs(f, std::move(s));
}

void write_coeffs_csv(const FormTable& tab, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw usage_error("cannot write " + path);
  out << "n,a_n,normalized\n";
  double ex = (static_cast<double>(tab.form.weight) - 1.0) / 2.0;
  char buf[64];
  for (long n = 1; n <= tab.N; ++n) {
    double norm = tab.ad[static_cast<size_t>(n)] / std::pow(static_cast<double>(n), ex);
    std::snprintf(buf, sizeof buf, "%.10g", norm);
    if (!std::strpbrk(buf, ".einEIN")) std::strcat(buf, ".0");  // keep "1.0", not "1"
    out << n << "," << tab.a[static_cast<size_t>(n)].get_str() << "," << buf << "\n";
  }
}

}  // namespace cuspsum
