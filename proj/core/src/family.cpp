#include <superlax/error.hpp>
#include <superlax/family.hpp>

namespace superlax
{

family_ptr generator_family::wn(int n, std::vector<generator_info> extras)
{
    if (n < 1) {
        throw error("W_N requires N >= 1");
    }
    std::vector<generator_info> gens;
    for (int i = 1; i <= n; ++i) {
        gens.push_back({"u" + std::to_string(i), i % 2});
    }
    gens.insert(gens.end(), extras.begin(), extras.end());
    return family_ptr(new generator_family(family_kind::wn, n, std::move(gens)));
}

family_ptr generator_family::affine_gl(int m, int n)
{
    if (m != n && m != n + 1) {
        throw shape_mismatch("gl(m|n) requires m = n or m = n + 1");
    }
    const int N = m + n;
    std::vector<generator_info> gens;
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            gens.push_back({"e[" + std::to_string(i) + "," + std::to_string(j) + "]", (i + j + 1) % 2});
        }
    }
    return family_ptr(new generator_family(family_kind::affine_gl, N, std::move(gens)));
}

family_ptr generator_family::custom(std::vector<generator_info> gens)
{
    return family_ptr(new generator_family(family_kind::custom, 0, std::move(gens)));
}

int generator_family::parity(int id) const
{
    if (id < 0 || id >= size()) {
        throw unknown_generator("generator id " + std::to_string(id) + " out of range");
    }
    return gens_[id].parity;
}

const std::string &generator_family::name(int id) const
{
    if (id < 0 || id >= size()) {
        throw unknown_generator("generator id " + std::to_string(id) + " out of range");
    }
    return gens_[id].name;
}

int generator_family::affine_id(int i, int j) const
{
    if (kind_ != family_kind::affine_gl || i < 1 || j < 1 || i > rank_ || j > rank_) {
        throw unknown_generator("no affine generator e[" + std::to_string(i) + "," + std::to_string(j) + "]");
    }
    return (i - 1) * rank_ + (j - 1);
}

std::pair<int, int> generator_family::affine_pair(int id) const
{
    if (kind_ != family_kind::affine_gl || id < 0 || id >= size()) {
        throw unknown_generator("not an affine generator id");
    }
    return {id / rank_ + 1, id % rank_ + 1};
}

int generator_family::find(const std::string &name) const
{
    for (int i = 0; i < size(); ++i) {
        if (gens_[i].name == name) {
            return i;
        }
    }
    throw unknown_generator("unknown generator '" + name + "'");
}

bool generator_family::operator==(const generator_family &other) const
{
    if (kind_ != other.kind_ || rank_ != other.rank_ || gens_.size() != other.gens_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].name != other.gens_[i].name || gens_[i].parity != other.gens_[i].parity) {
            return false;
        }
    }
    return true;
}

bool compatible(const family_ptr &a, const family_ptr &b)
{
    return !a || !b || a == b || *a == *b;
}

family_ptr merge_family(const family_ptr &a, const family_ptr &b)
{
    if (!compatible(a, b)) {
        throw family_mismatch("operands belong to different generator families");
    }
    return a ? a : b;
}

} // namespace superlax
