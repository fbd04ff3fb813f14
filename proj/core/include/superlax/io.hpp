#ifndef SUPERLAX_IO_HPP
#define SUPERLAX_IO_HPP

#include <string>

#include <superlax/chiop.hpp>

namespace superlax
{
namespace io
{

// Grammar:
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' ['-'] integer] | '-' factor
//   atom   := integer ['/' integer] | 'D' | 'chi' | 'gamma' | u<i>'... | u[i,m]
//           | e[i,j]'... | e[i,j,m] | 'O(D^' integer ')' | '(' expr ')'
// Without a family, u-generators give W_N with N the largest index and e-generators give
// gl(m|n) with m + n the largest index.
chi_op parse(const std::string &text, const family_ptr &fam = nullptr, truncation t = default_truncation());
spdo parse_spdo(const std::string &text, const family_ptr &fam = nullptr, truncation t = default_truncation());
super_poly parse_poly(const std::string &text, const family_ptr &fam = nullptr);

enum class format { json, latex, plain };

format parse_format(const std::string &s);

// JSON: {"terms":[{"coeff":"p/q","monomial":[[i,m],...],"dpow":k,"chipow":a}]} with i the
// 1-based generator index. "gammapow" and a top-level "floor" appear only when nonzero/truncated.
std::string emit(const chi_op &x, format f);
std::string emit(const spdo &x, format f);
std::string emit(const super_poly &x, format f);

// Inverse of emit(x, format::json).
chi_op parse_json(const std::string &text, const family_ptr &fam = nullptr);

} // namespace io
} // namespace superlax

#endif
