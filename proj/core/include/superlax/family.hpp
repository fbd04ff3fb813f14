#ifndef SUPERLAX_FAMILY_HPP
#define SUPERLAX_FAMILY_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace superlax
{

enum class family_kind { wn, affine_gl, custom };

struct generator_info {
    std::string name;
    int parity = 0;
};

class generator_family;
using family_ptr = std::shared_ptr<const generator_family>;

// An ordered list of differential generators. Generator ids are 0-based;
// the W_N generator u_i has id i-1 and the affine generator e_ij of gl(m|n)
// has id (i-1)*N + (j-1).
class generator_family
{
public:
    // u_1..u_N with p(u_i) = i mod 2, followed by optional extra generators.
    static family_ptr wn(int n, std::vector<generator_info> extras = {});
    // Odd affine generators ebar_ij of gl(m|n), p(ebar_ij) = i + j + 1 mod 2.
    static family_ptr affine_gl(int m, int n);
    static family_ptr custom(std::vector<generator_info> gens);

    family_kind kind() const noexcept { return kind_; }
    int size() const noexcept { return static_cast<int>(gens_.size()); }
    int parity(int id) const;
    const std::string &name(int id) const;
    // N for W_N and for gl(m|n) (m + n); 0 for custom families.
    int rank() const noexcept { return rank_; }
    int affine_id(int i, int j) const;
    std::pair<int, int> affine_pair(int id) const;
    int find(const std::string &name) const;

    bool operator==(const generator_family &other) const;

private:
    generator_family(family_kind kind, int rank, std::vector<generator_info> gens)
        : kind_(kind), rank_(rank), gens_(std::move(gens))
    {
    }

    family_kind kind_;
    int rank_;
    std::vector<generator_info> gens_;
};

// Null pointers stand for "no family yet" (constants) and are compatible with anything.
bool compatible(const family_ptr &a, const family_ptr &b);
family_ptr merge_family(const family_ptr &a, const family_ptr &b);

} // namespace superlax

#endif
