#pragma once

#include "qmcoh/group.hpp"
#include "qmcoh/integer.hpp"
#include "qmcoh/qz.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

namespace qmcoh {

enum class CoeffKind { qz, integer };

/// Lexicographic numbering of n-tuples of non-identity elements of a group of
/// the given order: (g1..gn) -> sum (g_k - 1) * (order-1)^(n-k).
class TupleIndexer {
public:
    TupleIndexer(int group_order, int degree);

    std::uint64_t size() const { return size_; }
    int degree() const { return degree_; }
    /// Caller guarantees every entry is non-identity.
    std::uint64_t index(std::span<const Elem> tuple) const {
        std::uint64_t idx = 0;
        for (Elem g : tuple) idx = idx * base_ + static_cast<std::uint64_t>(g - 1);
        return idx;
    }
    void decode(std::uint64_t idx, std::span<Elem> out) const;

private:
    std::uint64_t base_;
    int degree_;
    std::uint64_t size_;
};

/// Advances a tuple of non-identity elements in lexicographic order; returns
/// false after the last tuple.
bool next_tuple(std::span<Elem> tuple, int group_order);

/// Normalized inhomogeneous n-cochain on a group with trivial coefficients in
/// Q/Z or Z. Only tuples without the identity are stored; absent means zero.
class Cochain {
public:
    Cochain(FiniteGroup group, int degree, CoeffKind kind);

    const FiniteGroup& group() const { return group_; }
    int degree() const { return degree_; }
    CoeffKind kind() const { return kind_; }
    TupleIndexer indexer() const { return TupleIndexer(group_.order(), degree_); }

    /// Value at an arbitrary tuple; zero whenever an argument is the identity.
    QZValue qz_at(std::span<const Elem> args) const;
    Integer int_at(std::span<const Elem> args) const;

    /// Setting a nonzero value on a tuple containing the identity throws.
    void set(std::span<const Elem> args, const QZValue& v);
    void set(std::span<const Elem> args, const Integer& v);
    void set_index(std::uint64_t idx, const QZValue& v);
    void set_index(std::uint64_t idx, const Integer& v);

    const std::map<std::uint64_t, QZValue>& qz_entries() const { return qz_; }
    const std::map<std::uint64_t, Integer>& int_entries() const { return int_; }

    bool is_zero() const { return qz_.empty() && int_.empty(); }
    std::size_t support_size() const { return kind_ == CoeffKind::qz ? qz_.size() : int_.size(); }

    /// Same group table, degree, kind and values.
    friend bool operator==(const Cochain& a, const Cochain& b);

private:
    bool valid_args(std::span<const Elem> args) const;
    void require_kind(CoeffKind k) const;

    FiniteGroup group_;
    int degree_;
    CoeffKind kind_;
    std::map<std::uint64_t, QZValue> qz_;
    std::map<std::uint64_t, Integer> int_;
};

/// (df)(g1..g_{n+1}) = f(g2..) + sum_i (-1)^i f(..g_i g_{i+1}..) + (-1)^{n+1} f(g1..gn)
Cochain coboundary(const Cochain& f);
bool is_cocycle(const Cochain& f);

Cochain add_cochains(const Cochain& f, const Cochain& g);
Cochain subtract_cochains(const Cochain& f, const Cochain& g);
Cochain negate(const Cochain& f);
Cochain scale_cochain(const Integer& k, const Cochain& f);
/// (h* f)(g1..gn) = f(h(g1)..h(gn)).
Cochain pullback(const GroupHom& h, const Cochain& f);

/// The Q/Z cochain (f / denominator) mod 1 of an integer cochain.
Cochain integer_to_qz(const Cochain& f, const Integer& denominator);
/// Integer cochain of representatives: the value num/den in [0,1) becomes
/// num * (scale / den). scale must be a multiple of every denominator.
Cochain qz_numerators(const Cochain& f, const Integer& scale);
/// lcm of all denominators of a Q/Z cochain (1 for the zero cochain).
Integer denominator_lcm(const Cochain& f);

/// Dense integer vector of a Z cochain indexed by TupleIndexer.
std::vector<Integer> to_dense(const Cochain& f);
Cochain from_dense(const FiniteGroup& g, int degree, const std::vector<Integer>& values);

// Cochain text format:
//   cochain
//   group <label | path | inline>   (inline: a group block follows)
//   degree <k>
//   coeff <qz|int>
//   entry i1 ... ik <value>
//   end
Cochain parse_cochain(std::istream& in);
void write_cochain(std::ostream& out, const Cochain& f);

/// Writes "<key> <label>" when the group's name is a catalog label that
/// rebuilds the same table, otherwise "<key> inline" followed by the group.
void write_group_reference(std::ostream& out, const std::string& key, const FiniteGroup& g);
/// Reads the value of a "<key> ..." line written by write_group_reference.
FiniteGroup read_group_reference(std::istream& in, const std::string& value);

} // namespace qmcoh
