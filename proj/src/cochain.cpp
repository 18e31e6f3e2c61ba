#include "qmcoh/cochain.hpp"

#include "text_io.hpp"

#include "qmcoh/errors.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace qmcoh {

TupleIndexer::TupleIndexer(int group_order, int degree)
    : base_(static_cast<std::uint64_t>(group_order - 1)), degree_(degree), size_(1) {
    for (int i = 0; i < degree; ++i) size_ *= base_;
}

void TupleIndexer::decode(std::uint64_t idx, std::span<Elem> out) const {
    for (int k = degree_ - 1; k >= 0; --k) {
        out[k] = static_cast<Elem>(idx % base_) + 1;
        idx /= base_;
    }
}

bool next_tuple(std::span<Elem> tuple, int group_order) {
    for (std::size_t k = tuple.size(); k-- > 0;) {
        if (tuple[k] + 1 < group_order) {
            ++tuple[k];
            return true;
        }
        tuple[k] = 1;
    }
    return false;
}

namespace {

// Evaluates the coboundary on every (n+1)-tuple from a dense n-cochain.
template <class V>
std::vector<V> coboundary_dense(const FiniteGroup& g, int n, const std::vector<V>& f) {
    const int m = g.order();
    const TupleIndexer in(m, n), out_index(m, n + 1);
    std::vector<V> out(out_index.size());
    if (out.empty()) return out;
    std::vector<Elem> t(n + 1, 1), face(n);
    std::uint64_t pos = 0;
    do {
        V acc{};
        acc += f[in.index(std::span(t).subspan(1))];
        for (int i = 1; i <= n; ++i) {
            const Elem prod = g.mul(t[i - 1], t[i]);
            if (prod == 0) continue;
            for (int k = 0, j = 0; k <= n; ++k) {
                if (k == i) continue;
                face[j++] = (k == i - 1) ? prod : t[k];
            }
            if (i % 2 == 0) {
                acc += f[in.index(face)];
            } else {
                acc -= f[in.index(face)];
            }
        }
        if ((n + 1) % 2 == 0) {
            acc += f[in.index(std::span(t).first(n))];
        } else {
            acc -= f[in.index(std::span(t).first(n))];
        }
        out[pos++] = std::move(acc);
    } while (next_tuple(t, m));
    return out;
}

template <class V>
std::vector<V> dense_values(const std::map<std::uint64_t, V>& entries, std::uint64_t size) {
    std::vector<V> dense(size);
    for (const auto& [idx, v] : entries) dense[idx] = v;
    return dense;
}

// Common-denominator numerators fit comfortably in int64 below this bound.
constexpr std::int64_t kFastDenominator = std::int64_t{1} << 40;

Cochain qz_coboundary(const Cochain& f) {
    const FiniteGroup& g = f.group();
    const int n = f.degree();
    Cochain out(g, n + 1, CoeffKind::qz);
    const Integer lcm = denominator_lcm(f);
    const TupleIndexer in(g.order(), n);
    if (lcm < kFastDenominator) {
        const auto l = static_cast<std::int64_t>(lcm);
        std::vector<std::int64_t> dense(in.size(), 0);
        for (const auto& [idx, v] : f.qz_entries()) {
            dense[idx] = static_cast<std::int64_t>(v.num()) * (l / static_cast<std::int64_t>(v.den()));
        }
        const auto d = coboundary_dense(g, n, dense);
        for (std::uint64_t i = 0; i < d.size(); ++i) {
            const std::int64_t r = ((d[i] % l) + l) % l;
            if (r != 0) out.set_index(i, QZValue(r, l));
        }
        return out;
    }
    const auto d = coboundary_dense(g, n, dense_values(f.qz_entries(), in.size()));
    for (std::uint64_t i = 0; i < d.size(); ++i) {
        if (!d[i].is_zero()) out.set_index(i, d[i]);
    }
    return out;
}

Cochain int_coboundary(const Cochain& f) {
    const FiniteGroup& g = f.group();
    const int n = f.degree();
    Cochain out(g, n + 1, CoeffKind::integer);
    const TupleIndexer in(g.order(), n);
    try {
        std::vector<CheckedInt> dense(in.size());
        for (const auto& [idx, v] : f.int_entries()) dense[idx] = CheckedInt(v);
        const auto d = coboundary_dense(g, n, dense);
        for (std::uint64_t i = 0; i < d.size(); ++i) {
            if (d[i] != CheckedInt(0)) out.set_index(i, Integer(d[i].value()));
        }
    } catch (const Overflow&) {
        out = Cochain(g, n + 1, CoeffKind::integer);
        const auto d = coboundary_dense(g, n, dense_values(f.int_entries(), in.size()));
        for (std::uint64_t i = 0; i < d.size(); ++i) {
            if (d[i] != 0) out.set_index(i, d[i]);
        }
    }
    return out;
}

void require_compatible(const Cochain& f, const Cochain& g) {
    if (f.degree() != g.degree()) throw InputError("cochain degree mismatch");
    if (f.kind() != g.kind()) throw InputError("cochain coefficient mismatch");
    if (!f.group().same_table(g.group())) throw InputError("cochain group mismatch");
}

} // namespace

Cochain::Cochain(FiniteGroup group, int degree, CoeffKind kind)
    : group_(std::move(group)), degree_(degree), kind_(kind) {
    if (degree < 0) throw InputError("negative cochain degree");
}

bool Cochain::valid_args(std::span<const Elem> args) const {
    if (static_cast<int>(args.size()) != degree_) throw InputError("cochain argument count mismatch");
    for (Elem a : args) {
        if (a < 0 || a >= group_.order()) throw InputError("cochain argument out of range");
    }
    return std::none_of(args.begin(), args.end(), [](Elem a) { return a == 0; });
}

void Cochain::require_kind(CoeffKind k) const {
    if (k != kind_) throw InputError("cochain coefficient kind mismatch");
}

QZValue Cochain::qz_at(std::span<const Elem> args) const {
    require_kind(CoeffKind::qz);
    if (!valid_args(args)) return {};
    const auto it = qz_.find(indexer().index(args));
    return it == qz_.end() ? QZValue{} : it->second;
}

Integer Cochain::int_at(std::span<const Elem> args) const {
    require_kind(CoeffKind::integer);
    if (!valid_args(args)) return 0;
    const auto it = int_.find(indexer().index(args));
    return it == int_.end() ? Integer(0) : it->second;
}

void Cochain::set(std::span<const Elem> args, const QZValue& v) {
    require_kind(CoeffKind::qz);
    if (!valid_args(args)) {
        if (!v.is_zero()) throw InputError("normalized cochain must vanish on identity arguments");
        return;
    }
    set_index(indexer().index(args), v);
}

void Cochain::set(std::span<const Elem> args, const Integer& v) {
    require_kind(CoeffKind::integer);
    if (!valid_args(args)) {
        if (v != 0) throw InputError("normalized cochain must vanish on identity arguments");
        return;
    }
    set_index(indexer().index(args), v);
}

void Cochain::set_index(std::uint64_t idx, const QZValue& v) {
    require_kind(CoeffKind::qz);
    if (v.is_zero()) {
        qz_.erase(idx);
    } else {
        qz_[idx] = v;
    }
}

void Cochain::set_index(std::uint64_t idx, const Integer& v) {
    require_kind(CoeffKind::integer);
    if (v == 0) {
        int_.erase(idx);
    } else {
        int_[idx] = v;
    }
}

bool operator==(const Cochain& a, const Cochain& b) {
    return a.degree_ == b.degree_ && a.kind_ == b.kind_ && a.group_.same_table(b.group_) && a.qz_ == b.qz_ &&
           a.int_ == b.int_;
}

Cochain coboundary(const Cochain& f) {
    return f.kind() == CoeffKind::qz ? qz_coboundary(f) : int_coboundary(f);
}

bool is_cocycle(const Cochain& f) { return coboundary(f).is_zero(); }

Cochain add_cochains(const Cochain& f, const Cochain& g) {
    require_compatible(f, g);
    Cochain out = f;
    if (f.kind() == CoeffKind::qz) {
        for (const auto& [idx, v] : g.qz_entries()) {
            const auto it = f.qz_entries().find(idx);
            out.set_index(idx, it == f.qz_entries().end() ? v : it->second + v);
        }
    } else {
        for (const auto& [idx, v] : g.int_entries()) {
            const auto it = f.int_entries().find(idx);
            out.set_index(idx, it == f.int_entries().end() ? v : Integer(it->second + v));
        }
    }
    return out;
}

Cochain negate(const Cochain& f) { return scale_cochain(-1, f); }

Cochain subtract_cochains(const Cochain& f, const Cochain& g) { return add_cochains(f, negate(g)); }

Cochain scale_cochain(const Integer& k, const Cochain& f) {
    Cochain out(f.group(), f.degree(), f.kind());
    for (const auto& [idx, v] : f.qz_entries()) out.set_index(idx, scale(k, v));
    for (const auto& [idx, v] : f.int_entries()) out.set_index(idx, Integer(k * v));
    return out;
}

Cochain pullback(const GroupHom& h, const Cochain& f) {
    if (!h.target().same_table(f.group())) throw InputError("pullback: cochain is not on the hom target");
    const int n = f.degree();
    Cochain out(h.source(), n, f.kind());
    if (f.is_zero()) return out;
    const TupleIndexer target_index(f.group().order(), n);
    std::vector<Elem> t(n, 1), image(n);
    std::uint64_t pos = 0;
    if (h.source().order() == 1 && n > 0) return out;
    do {
        bool identity_hit = false;
        for (int k = 0; k < n; ++k) {
            image[k] = h(t[k]);
            identity_hit = identity_hit || image[k] == 0;
        }
        if (!identity_hit) {
            const std::uint64_t idx = target_index.index(image);
            if (f.kind() == CoeffKind::qz) {
                if (auto it = f.qz_entries().find(idx); it != f.qz_entries().end()) out.set_index(pos, it->second);
            } else {
                if (auto it = f.int_entries().find(idx); it != f.int_entries().end()) out.set_index(pos, it->second);
            }
        }
        ++pos;
    } while (next_tuple(t, h.source().order()));
    return out;
}

Cochain integer_to_qz(const Cochain& f, const Integer& denominator) {
    if (f.kind() != CoeffKind::integer) throw InputError("integer_to_qz expects an integer cochain");
    Cochain out(f.group(), f.degree(), CoeffKind::qz);
    for (const auto& [idx, v] : f.int_entries()) out.set_index(idx, QZValue(v, denominator));
    return out;
}

Cochain qz_numerators(const Cochain& f, const Integer& scale) {
    if (f.kind() != CoeffKind::qz) throw InputError("qz_numerators expects a Q/Z cochain");
    Cochain out(f.group(), f.degree(), CoeffKind::integer);
    for (const auto& [idx, v] : f.qz_entries()) {
        if (scale % v.den() != 0) throw InternalError("scale is not a multiple of a denominator");
        out.set_index(idx, Integer(v.num() * (scale / v.den())));
    }
    return out;
}

Integer denominator_lcm(const Cochain& f) {
    Integer l = 1;
    for (const auto& [idx, v] : f.qz_entries()) l = lcm_of(l, v.den());
    return l;
}

std::vector<Integer> to_dense(const Cochain& f) {
    if (f.kind() != CoeffKind::integer) throw InputError("to_dense expects an integer cochain");
    return dense_values(f.int_entries(), f.indexer().size());
}

Cochain from_dense(const FiniteGroup& g, int degree, const std::vector<Integer>& values) {
    Cochain out(g, degree, CoeffKind::integer);
    if (values.size() != out.indexer().size()) throw InternalError("dense cochain has wrong length");
    for (std::uint64_t i = 0; i < values.size(); ++i) {
        if (values[i] != 0) out.set_index(i, values[i]);
    }
    return out;
}

void write_group_reference(std::ostream& out, const std::string& key, const FiniteGroup& g) {
    bool labelled = false;
    try {
        labelled = catalog_group(g.name()).same_table(g);
    } catch (const InputError&) {
        labelled = false;
    }
    if (labelled) {
        out << key << ' ' << g.name() << '\n';
    } else {
        out << key << " inline\n";
        write_group(out, g);
    }
}

FiniteGroup read_group_reference(std::istream& in, const std::string& value) {
    if (value == "inline") return parse_group(in);
    return load_group(value);
}


Cochain parse_cochain(std::istream& in) {
    textio::expect_key(in, "cochain");
    const FiniteGroup g = read_group_reference(in, textio::expect_key(in, "group"));
    const std::string degree_text = textio::expect_key(in, "degree");
    int degree = -1;
    try {
        degree = std::stoi(degree_text);
    } catch (const std::exception&) {
        throw InputError("malformed degree '" + degree_text + "'");
    }
    if (degree < 0) throw InputError("negative degree");
    const std::string coeff = textio::expect_key(in, "coeff");
    CoeffKind kind;
    if (coeff == "qz") {
        kind = CoeffKind::qz;
    } else if (coeff == "int") {
        kind = CoeffKind::integer;
    } else {
        throw InputError("coeff must be 'qz' or 'int'");
    }
    Cochain f(g, degree, kind);
    std::map<std::uint64_t, bool> listed;
    std::string line;
    while (true) {
        if (!textio::next_content_line(in, line)) throw InputError("missing 'end' in cochain");
        if (line == "end") break;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word != "entry") throw InputError("expected 'entry' or 'end', got '" + line + "'");
        std::vector<std::string> fields;
        while (ls >> word) fields.push_back(word);
        if (static_cast<int>(fields.size()) != degree + 1) {
            throw InputError("entry needs " + std::to_string(degree) + " indices and a value");
        }
        std::vector<Elem> args(degree);
        for (int k = 0; k < degree; ++k) {
            try {
                std::size_t used = 0;
                args[k] = std::stoi(fields[k], &used);
                if (used != fields[k].size()) throw InputError("bad index");
            } catch (const std::exception&) {
                throw InputError("malformed element index '" + fields[k] + "'");
            }
            if (args[k] <= 0 || args[k] >= g.order()) {
                throw InputError("entry index '" + fields[k] + "' must be a non-identity element");
            }
        }
        const std::uint64_t idx = f.indexer().index(args);
        if (listed.count(idx)) throw InputError("duplicate entry '" + line + "'");
        listed[idx] = true;
        if (kind == CoeffKind::qz) {
            f.set_index(idx, parse_qz(fields.back()));
        } else {
            f.set_index(idx, parse_integer(fields.back()));
        }
    }
    return f;
}

void write_cochain(std::ostream& out, const Cochain& f) {
    out << "cochain\n";
    write_group_reference(out, "group", f.group());
    out << "degree " << f.degree() << "\ncoeff " << (f.kind() == CoeffKind::qz ? "qz" : "int") << '\n';
    const TupleIndexer ix = f.indexer();
    std::vector<Elem> args(f.degree());
    auto emit = [&](std::uint64_t idx, const std::string& value) {
        ix.decode(idx, args);
        out << "entry";
        for (Elem a : args) out << ' ' << a;
        out << ' ' << value << '\n';
    };
    for (const auto& [idx, v] : f.qz_entries()) emit(idx, v.to_string());
    for (const auto& [idx, v] : f.int_entries()) emit(idx, v.str());
    out << "end\n";
}

} // namespace qmcoh
