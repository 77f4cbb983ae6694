#ifndef CUSPSUM_CACHE_HPP
#define CUSPSUM_CACHE_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "cuspsum/forms.hpp"

namespace cuspsum {

/*
 * Plain-text coefficient cache.  One file per recipe digest:
 *   line 1:  k N digest
 *   lines 2..N+1:  a_1 .. a_N as decimal integers.
 * A cache hit requires an exact digest match and stored order >= N.
 */

// Canonical recipe string: weight, then terms sorted by (dpow,e4pow,e6pow),
// each as coeff.dpow.e4pow.e6pow joined with ';'.  No whitespace.
std::string recipe_digest(const CuspForm& f);

// Precedence: explicit flag > CUSPSUM_CACHE_DIR > ./.cuspsum-cache.
std::filesystem::path cache_dir(const std::optional<std::string>& flag);

std::filesystem::path cache_file(const std::filesystem::path& dir, const CuspForm& f);

// Load when a valid cache file covers order N, otherwise build and store.
FormTable load_or_build(const CuspForm& f, long N, const std::optional<std::string>& dir_flag);

bool cache_probe(const std::filesystem::path& dir, const CuspForm& f, long N);
void cache_store(const std::filesystem::path& dir, const CuspForm& f, const IntSeries& s);
std::optional<FormTable> cache_load(const std::filesystem::path& dir, const CuspForm& f, long N);

// CSV emission: header n,a_n,normalized then one row per coefficient,
// normalized = a_n / n^{(k-1)/2}.
void write_coeffs_csv(const FormTable& tab, const std::string& path);

}  // namespace cuspsum

#endif
