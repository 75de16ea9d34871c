#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nnsel/fol/clause.hpp"
#include "nnsel/fol/problem.hpp"

namespace nnsel::fol {

/// Resolves the argument of `include('...')` to file contents.
using IncludeLoader = std::function<std::string(const std::string& path)>;

/// Parses the cnf/fof subset of TPTP. Conjectures are negated and clausified;
/// cnf clauses are taken as written with variables numbered by first
/// occurrence. Includes are expanded one level deep when a loader is given.
Problem parse_tptp(std::string_view text, std::string name = "problem",
                   const IncludeLoader& loader = {});

/// Parses a bare clause body such as `p(X) | ~q(a)` or `$false` into `sig`.
std::vector<Literal> parse_clause(std::string_view text, Signature& sig);

/// Reads a TPTP file from disk; includes are resolved relative to its directory.
Problem load_tptp_file(const std::string& path);

}  // namespace nnsel::fol
