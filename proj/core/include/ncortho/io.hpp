#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ncortho/freeproduct.hpp"
#include "ncortho/functional.hpp"
#include "ncortho/jacobi.hpp"
#include "ncortho/ncpoly.hpp"
#include "ncortho/orthopoly.hpp"
#include "ncortho/paths.hpp"
#include "ncortho/words.hpp"

// JSON encodings. Every parser throws SchemaError for malformed text or a
// document of the wrong shape; the message names the offending entry.
// Numbers are written in shortest round-trip form, so reloading is exact.
namespace ncortho::io {

std::string word_to_json(const Word& w);
Word word_from_json(std::string_view text, int alphabet_size);

/// [{"word": [...], "coeff": c}, ...] in graded-lex order.
std::string polynomial_to_json(const NcPolynomial& p);
NcPolynomial polynomial_from_json(std::string_view text, int alphabet_size);

/// {"N", "max_degree", "moments": [{"word", "value"}]}.
std::string moments_to_json(const MomentFunctional& phi);
MomentFunctional moments_from_json(std::string_view text, double symmetry_tol = kDefaultTolerance);

/// {"N", "depth", "A": [{"n", "k", "rows"}], "B": [...]}, row-major blocks.
std::string family_to_json(const AdmissibleFamily& f);
AdmissibleFamily family_from_json(std::string_view text);

/// {"N", "depth", "basis": [{"word", "polynomial"}]}.
std::string basis_to_json(const OrthonormalBasis& basis);
OrthonormalBasis basis_from_json(std::string_view text);

/// {"word", "count", "paths": [[{"kind", "from": [t,k,m], "to": [t,k,m]}]]}.
std::string paths_to_json(const Word& sigma, const std::vector<LatticePath>& paths);
std::vector<LatticePath> paths_from_json(std::string_view text);

/// {"a": [...], "b": [...]} with an optional "label".
OneDimRecurrence recurrence_from_json(std::string_view text, std::string label);

/// Comma-separated list, one entry per letter: hermite, chebyshev_t,
/// legendre, laguerre or laguerre(alpha), custom:<file.json>. Classical
/// entries carry coefficients up to n_max; custom paths resolve against
/// base_dir when relative.
std::vector<OneDimRecurrence> parse_recurrence_spec(std::string_view spec, int n_max,
                                                    const std::filesystem::path& base_dir = {});

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace ncortho::io
