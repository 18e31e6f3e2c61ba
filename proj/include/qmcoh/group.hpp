#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qmcoh {

/// Element index inside a FiniteGroup. The identity is always 0.
using Elem = int;

/// A finite group given by its multiplication table.
///
/// Copies share the same immutable table, so passing groups by value is
/// cheap and safe across threads.
class FiniteGroup {
public:
    /// Validates associativity, identity at index 0 and inverses.
    /// Throws InputError on a malformed table.
    FiniteGroup(std::string name, int order, std::vector<Elem> table);

    int order() const { return data_->order; }
    const std::string& name() const { return data_->name; }
    Elem mul(Elem a, Elem b) const { return data_->table[static_cast<std::size_t>(a) * data_->order + b]; }
    Elem inv(Elem a) const { return data_->inverse[a]; }
    static constexpr Elem identity() { return 0; }

    /// Order of a as a group element.
    int element_order(Elem a) const;
    /// Smallest subgroup containing gens, as a sorted element list.
    std::vector<Elem> generated_subgroup(std::span<const Elem> gens) const;

    std::span<const Elem> table() const { return data_->table; }

    /// Same multiplication table (names are labels only and are ignored).
    bool same_table(const FiniteGroup& other) const;

    /// The same group under a different label.
    FiniteGroup renamed(std::string name) const;

private:
    struct Data {
        std::string name;
        int order;
        std::vector<Elem> table;
        std::vector<Elem> inverse;
    };
    explicit FiniteGroup(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    std::shared_ptr<const Data> data_;
};

/// Homomorphism by its image array; validated on construction.
class GroupHom {
public:
    GroupHom(FiniteGroup source, FiniteGroup target, std::vector<Elem> image);

    static GroupHom identity(const FiniteGroup& g);

    const FiniteGroup& source() const { return source_; }
    const FiniteGroup& target() const { return target_; }
    const std::vector<Elem>& image() const { return image_; }
    Elem operator()(Elem a) const { return image_[a]; }

private:
    FiniteGroup source_;
    FiniteGroup target_;
    std::vector<Elem> image_;
};

bool is_surjective(const GroupHom& h);

/// Lexicographic (a, b) -> a*|B| + b indexing.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

/// Builds a group from a catalog label, e.g. "cyclic:6", "dihedral:4",
/// "quaternion:8", "sym:3", "elem:2^3", "product:cyclic:2 x cyclic:2".
FiniteGroup catalog_group(std::string_view label);

/// All surjective homomorphisms source -> target, sorted lexicographically by
/// image array.
std::vector<GroupHom> enumerate_surjections(const FiniteGroup& source, const FiniteGroup& target);

/// Greedy small generating set: repeatedly adds the element that enlarges the
/// generated subgroup most (ties broken by smallest index).
std::vector<Elem> greedy_generators(const FiniteGroup& g);

/// True iff every Sylow subgroup of g is cyclic.
bool sylow_all_cyclic(const FiniteGroup& g);

/// Catalog labels used as the default cover search space: every supported
/// label of order <= max_order, ascending by order (stable within an order).
std::vector<std::string> default_catalog_labels(int max_order = 16);

/// Standard labels of small order used by test sweeps and the cover search.
std::vector<std::string> standard_catalog_labels();

// Group text format:
//   group <name>
//   order <n>
//   table
//   <n lines of n indices>
//   end
FiniteGroup parse_group(std::istream& in);
void write_group(std::ostream& out, const FiniteGroup& g);

/// Accepts either a catalog label or a path to a file in the group format.
FiniteGroup load_group(const std::string& label_or_path);

} // namespace qmcoh
