#include "qmcoh/quasimonoidal.hpp"

#include "qmcoh/errors.hpp"
#include "text_io.hpp"

#include <optional>
#include <ostream>
#include <sstream>

namespace qmcoh {

namespace {

std::string tuple_text(std::span<const Elem> t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}

std::string strip_op_suffix(const std::string& name, bool& had) {
    static const std::string suffix = "^op";
    had = name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
    return had ? name.substr(0, name.size() - suffix.size()) : name;
}

} // namespace

QuasiMonoidalSkeleton::QuasiMonoidalSkeleton(GroupHom p, Cochain psi)
    : cover(p.source()), base(p.target()), grading(std::move(p)), associator(std::move(psi)) {
    if (!is_surjective(grading)) throw InputError("grading is not surjective");
    if (associator.kind() != CoeffKind::qz || associator.degree() != 3) {
        throw InputError("associator must be a Q/Z 3-cochain");
    }
    if (!associator.group().same_table(cover)) throw InputError("associator lives on a different group than the cover");
}

QuasiMonoidalSkeleton trivial_skeleton(const FiniteGroup& base) {
    return QuasiMonoidalSkeleton(GroupHom::identity(base), Cochain(base, 3, CoeffKind::qz));
}

PentagonDefect pentagon_defect(const QuasiMonoidalSkeleton& c) {
    const Cochain d = coboundary(c.associator);
    const GroupHom& p = c.grading;
    const TupleIndexer base_ix(c.base.order(), 4);
    std::vector<std::optional<QZValue>> values(base_ix.size());
    std::vector<std::uint64_t> witness(base_ix.size(), 0);
    const TupleIndexer cover_ix(c.cover.order(), 4);

    PentagonDefect out{c.base, Cochain(c.base, 4, CoeffKind::qz)};
    if (cover_ix.size() == 0) return out;

    static const QZValue zero;
    auto it = d.qz_entries().begin();
    const auto end = d.qz_entries().end();
    std::vector<Elem> t(4, 1), image(4), other(4);
    std::uint64_t idx = 0;
    do {
        const QZValue* v = &zero;
        if (it != end && it->first == idx) {
            v = &it->second;
            ++it;
        }
        int kernel_slot = -1;
        for (int k = 0; k < 4; ++k) {
            image[k] = p(t[k]);
            if (image[k] == 0 && kernel_slot < 0) kernel_slot = k;
        }
        if (kernel_slot >= 0) {
            if (!v->is_zero()) {
                other = t;
                other[kernel_slot] = 0;
                throw DescentError("pentagon defect does not descend: cover tuples " + tuple_text(t) + " and " +
                                   tuple_text(other) + " lie over base tuple " + tuple_text(image) +
                                   " but have values " + v->to_string() + " and 0");
            }
        } else {
            const std::uint64_t b = base_ix.index(image);
            if (!values[b]) {
                values[b] = *v;
                witness[b] = idx;
            } else if (!(*values[b] == *v)) {
                cover_ix.decode(witness[b], other);
                throw DescentError("pentagon defect does not descend: cover tuples " + tuple_text(other) + " and " +
                                   tuple_text(t) + " lie over base tuple " + tuple_text(image) +
                                   " but have values " + values[b]->to_string() + " and " + v->to_string());
            }
        }
        ++idx;
    } while (next_tuple(t, c.cover.order()));

    for (std::uint64_t b = 0; b < values.size(); ++b) {
        if (!values[b]) throw InternalError("grading missed a base tuple");
        if (!values[b]->is_zero()) out.cocycle.set_index(b, *values[b]);
    }
    if (!is_cocycle(out.cocycle)) throw InternalError("descended pentagon defect is not a cocycle");
    return out;
}

QuasiMonoidalSkeleton twist(const QuasiMonoidalSkeleton& c, const Cochain& lambda) {
    if (!lambda.group().same_table(c.base)) throw InputError("twist cochain lives on a different group than the base");
    if (lambda.degree() != 3 || lambda.kind() != CoeffKind::qz) throw InputError("twist needs a Q/Z 3-cochain");
    return QuasiMonoidalSkeleton(c.grading, add_cochains(c.associator, pullback(c.grading, lambda)));
}

FiniteGroup opposite_group(const FiniteGroup& g) {
    const int n = g.order();
    std::vector<Elem> table(static_cast<std::size_t>(n) * n);
    for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = g.mul(b, a);
    }
    bool had = false;
    const std::string stem = strip_op_suffix(g.name(), had);
    FiniteGroup op(g.name(), n, std::move(table));
    if (op.same_table(g)) return g;
    return op.renamed(had ? stem : g.name() + "^op");
}

QuasiMonoidalSkeleton opposite(const QuasiMonoidalSkeleton& c) {
    const FiniteGroup cover_op = opposite_group(c.cover);
    std::vector<Elem> image(c.cover.order());
    for (Elem a = 0; a < c.cover.order(); ++a) image[a] = c.base.inv(c.grading(a));
    GroupHom p(cover_op, c.base, std::move(image));

    Cochain psi(cover_op, 3, CoeffKind::qz);
    const TupleIndexer ix(c.cover.order(), 3);
    std::vector<Elem> t(3), r(3);
    for (const auto& [idx, v] : c.associator.qz_entries()) {
        ix.decode(idx, t);
        r = {t[2], t[1], t[0]};
        psi.set(r, -v);
    }
    return QuasiMonoidalSkeleton(std::move(p), std::move(psi));
}

QuasiMonoidalSkeleton fiber_product(const QuasiMonoidalSkeleton& c, const QuasiMonoidalSkeleton& d) {
    if (!c.base.same_table(d.base)) throw InputError("fiber product needs skeletons over the same base");
    const FiniteGroup& a = c.cover;
    const FiniteGroup& b = d.cover;
    std::vector<std::pair<Elem, Elem>> elems;
    std::vector<int> position(static_cast<std::size_t>(a.order()) * b.order(), -1);
    for (Elem x = 0; x < a.order(); ++x) {
        for (Elem y = 0; y < b.order(); ++y) {
            if (c.grading(x) != d.grading(y)) continue;
            position[static_cast<std::size_t>(x) * b.order() + y] = static_cast<int>(elems.size());
            elems.emplace_back(x, y);
        }
    }
    const int n = static_cast<int>(elems.size());
    std::vector<Elem> table(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Elem x = a.mul(elems[i].first, elems[j].first);
            const Elem y = b.mul(elems[i].second, elems[j].second);
            const int k = position[static_cast<std::size_t>(x) * b.order() + y];
            if (k < 0) throw InternalError("fiber product is not closed under multiplication");
            table[static_cast<std::size_t>(i) * n + j] = k;
        }
    }
    const FiniteGroup cover("fiber:" + a.name() + " x " + b.name(), n, std::move(table));
    std::vector<Elem> image(n);
    for (int i = 0; i < n; ++i) image[i] = c.grading(elems[i].first);
    GroupHom p(cover, c.base, std::move(image));

    Cochain psi(cover, 3, CoeffKind::qz);
    std::vector<Elem> t(3, 1), left(3), right(3);
    if (n > 1) {
        do {
            for (int k = 0; k < 3; ++k) {
                left[k] = elems[t[k]].first;
                right[k] = elems[t[k]].second;
            }
            const QZValue v = c.associator.qz_at(left) + d.associator.qz_at(right);
            if (!v.is_zero()) psi.set(t, v);
        } while (next_tuple(t, n));
    }
    return QuasiMonoidalSkeleton(std::move(p), std::move(psi));
}

QuasiMonoidalSkeleton parse_skeleton(std::istream& in) {
    textio::expect_key(in, "skeleton");
    const FiniteGroup cover = read_group_reference(in, textio::expect_key(in, "cover"));
    const FiniteGroup base = read_group_reference(in, textio::expect_key(in, "base"));
    std::istringstream gs(textio::expect_key(in, "grading"));
    std::vector<Elem> image;
    std::string word;
    while (gs >> word) {
        try {
            std::size_t used = 0;
            image.push_back(std::stoi(word, &used));
            if (used != word.size()) throw InputError("bad index");
        } catch (const std::exception&) {
            throw InputError("malformed grading entry '" + word + "'");
        }
    }
    if (static_cast<int>(image.size()) != cover.order()) {
        throw InputError("grading needs " + std::to_string(cover.order()) + " entries");
    }
    for (Elem e : image) {
        if (e < 0 || e >= base.order()) throw InputError("grading entry out of range");
    }
    GroupHom p(cover, base, std::move(image));
    textio::expect_key(in, "associator");
    Cochain psi = parse_cochain(in);
    if (!psi.group().same_table(cover)) throw InputError("associator group differs from the cover");
    if (psi.kind() != CoeffKind::qz) throw InputError("associator must have Q/Z coefficients");
    // Re-home the associator on the cover object so names agree.
    Cochain on_cover(cover, psi.degree(), psi.kind());
    for (const auto& [idx, v] : psi.qz_entries()) on_cover.set_index(idx, v);
    std::string line;
    if (!textio::next_content_line(in, line) || line != "end") throw InputError("expected 'end' after skeleton");
    return QuasiMonoidalSkeleton(std::move(p), std::move(on_cover));
}

void write_skeleton(std::ostream& out, const QuasiMonoidalSkeleton& c) {
    out << "skeleton\n";
    write_group_reference(out, "cover", c.cover);
    write_group_reference(out, "base", c.base);
    out << "grading";
    for (Elem e : c.grading.image()) out << ' ' << e;
    out << "\nassociator\n";
    write_cochain(out, c.associator);
    out << "end\n";
}

} // namespace qmcoh
