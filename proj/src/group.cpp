#include "qmcoh/group.hpp"

#include "qmcoh/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace qmcoh {

namespace {

int parse_positive(std::string_view text, std::string_view what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value <= 0) {
        throw InputError("malformed " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

FiniteGroup make_cyclic(int n) {
    std::vector<Elem> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
    }
    return FiniteGroup("cyclic:" + std::to_string(n), n, std::move(t));
}

// r^i s^j stored at index j*n + i.
FiniteGroup make_dihedral(int n) {
    const int order = 2 * n;
    std::vector<Elem> t(static_cast<std::size_t>(order) * order);
    for (int x = 0; x < order; ++x) {
        for (int y = 0; y < order; ++y) {
            const int i = x % n, a = x / n;
            const int k = y % n, b = y / n;
            const int rot = ((a == 0 ? i + k : i - k) % n + n) % n;
            t[static_cast<std::size_t>(x) * order + y] = ((a + b) % 2) * n + rot;
        }
    }
    return FiniteGroup("dihedral:" + std::to_string(n), order, std::move(t));
}

// a^i b^j stored at index j*4 + i; a^4 = 1, b^2 = a^2, b a = a^-1 b.
FiniteGroup make_quaternion8() {
    std::vector<Elem> t(64);
    for (int x = 0; x < 8; ++x) {
        for (int y = 0; y < 8; ++y) {
            const int i = x % 4, j = x / 4;
            const int k = y % 4, l = y / 4;
            int rot = j == 0 ? i + k : i - k;
            int bs = j + l;
            if (bs == 2) {
                rot += 2;
                bs = 0;
            }
            t[static_cast<std::size_t>(x) * 8 + y] = bs * 4 + ((rot % 4) + 4) % 4;
        }
    }
    return FiniteGroup("quaternion:8", 8, std::move(t));
}

// Permutations in lexicographic order; (s*t)(x) = s(t(x)).
FiniteGroup make_symmetric(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const int order = static_cast<int>(perms.size());
    std::vector<Elem> t(static_cast<std::size_t>(order) * order);
    std::vector<int> comp(n);
    for (int a = 0; a < order; ++a) {
        for (int b = 0; b < order; ++b) {
            for (int x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
            const auto it = std::lower_bound(perms.begin(), perms.end(), comp);
            t[static_cast<std::size_t>(a) * order + b] = static_cast<Elem>(it - perms.begin());
        }
    }
    return FiniteGroup("sym:" + std::to_string(n), order, std::move(t));
}

constexpr int kMaxCatalogOrder = 64;

} // namespace

FiniteGroup::FiniteGroup(std::string name, int order, std::vector<Elem> table) {
    if (order <= 0) throw InputError("group order must be positive");
    const auto n = static_cast<std::size_t>(order);
    if (table.size() != n * n) throw InputError("multiplication table has wrong size");
    for (Elem v : table) {
        if (v < 0 || v >= order) throw InputError("table entry out of range");
    }
    auto at = [&](Elem a, Elem b) { return table[static_cast<std::size_t>(a) * n + b]; };
    for (Elem a = 0; a < order; ++a) {
        if (at(0, a) != a || at(a, 0) != a) throw InputError("element 0 is not the identity");
    }
    for (Elem a = 0; a < order; ++a) {
        for (Elem b = 0; b < order; ++b) {
            const Elem ab = at(a, b);
            for (Elem c = 0; c < order; ++c) {
                if (at(ab, c) != at(a, at(b, c))) {
                    throw InputError("table is not associative at (" + std::to_string(a) + "," +
                                     std::to_string(b) + "," + std::to_string(c) + ")");
                }
            }
        }
    }
    std::vector<Elem> inverse(n, -1);
    for (Elem a = 0; a < order; ++a) {
        for (Elem b = 0; b < order; ++b) {
            if (at(a, b) == 0 && at(b, a) == 0) {
                inverse[a] = b;
                break;
            }
        }
        if (inverse[a] < 0) throw InputError("element " + std::to_string(a) + " has no inverse");
    }
    data_ = std::make_shared<const Data>(Data{std::move(name), order, std::move(table), std::move(inverse)});
}

int FiniteGroup::element_order(Elem a) const {
    int k = 1;
    for (Elem x = a; x != 0; x = mul(x, a)) ++k;
    return k;
}

std::vector<Elem> FiniteGroup::generated_subgroup(std::span<const Elem> gens) const {
    std::vector<char> seen(order(), 0);
    std::vector<Elem> members{0};
    seen[0] = 1;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (Elem g : gens) {
            const Elem x = mul(members[i], g);
            if (!seen[x]) {
                seen[x] = 1;
                members.push_back(x);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

bool FiniteGroup::same_table(const FiniteGroup& other) const {
    return data_ == other.data_ || (order() == other.order() && data_->table == other.data_->table);
}

FiniteGroup FiniteGroup::renamed(std::string name) const {
    auto d = std::make_shared<Data>(*data_);
    d->name = std::move(name);
    return FiniteGroup(std::shared_ptr<const Data>(std::move(d)));
}

GroupHom::GroupHom(FiniteGroup source, FiniteGroup target, std::vector<Elem> image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
    const int n = source_.order();
    if (static_cast<int>(image_.size()) != n) throw InputError("homomorphism image has wrong length");
    for (Elem v : image_) {
        if (v < 0 || v >= target_.order()) throw InputError("homomorphism image out of range");
    }
    if (image_[0] != 0) throw InputError("homomorphism does not fix the identity");
    for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
            if (image_[source_.mul(a, b)] != target_.mul(image_[a], image_[b])) {
                throw InputError("map is not a homomorphism at (" + std::to_string(a) + "," +
                                 std::to_string(b) + ")");
            }
        }
    }
}

GroupHom GroupHom::identity(const FiniteGroup& g) {
    std::vector<Elem> image(g.order());
    std::iota(image.begin(), image.end(), 0);
    return GroupHom(g, g, std::move(image));
}

bool is_surjective(const GroupHom& h) {
    std::vector<char> hit(h.target().order(), 0);
    for (Elem v : h.image()) hit[v] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int na = a.order(), nb = b.order();
    const int n = na * nb;
    std::vector<Elem> t(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            t[static_cast<std::size_t>(x) * n + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
        }
    }
    return FiniteGroup("product:" + a.name() + " x " + b.name(), n, std::move(t));
}

FiniteGroup catalog_group(std::string_view label) {
    const auto colon = label.find(':');
    if (colon == std::string_view::npos) throw InputError("unknown group label '" + std::string(label) + "'");
    const std::string_view kind = label.substr(0, colon);
    const std::string_view arg = label.substr(colon + 1);

    if (kind == "product") {
        const auto sep = arg.find(" x ");
        if (sep == std::string_view::npos) throw InputError("product label needs '<label> x <label>'");
        const FiniteGroup left = catalog_group(arg.substr(0, sep));
        const FiniteGroup right = catalog_group(arg.substr(sep + 3));
        if (left.order() * right.order() > kMaxCatalogOrder) {
            throw InputError("product order exceeds " + std::to_string(kMaxCatalogOrder));
        }
        return direct_product(left, right).renamed(std::string(label));
    }
    if (kind == "cyclic") {
        const int n = parse_positive(arg, "cyclic order");
        if (n > kMaxCatalogOrder) throw InputError("cyclic order exceeds " + std::to_string(kMaxCatalogOrder));
        return make_cyclic(n);
    }
    if (kind == "dihedral") {
        const int n = parse_positive(arg, "dihedral parameter");
        if (n < 2 || 2 * n > kMaxCatalogOrder) throw InputError("dihedral:<n> needs 2 <= n <= 32");
        return make_dihedral(n);
    }
    if (kind == "quaternion") {
        if (arg != "8") throw InputError("only quaternion:8 is supported");
        return make_quaternion8();
    }
    if (kind == "sym") {
        const int n = parse_positive(arg, "symmetric degree");
        if (n != 3 && n != 4) throw InputError("only sym:3 and sym:4 are supported");
        return make_symmetric(n);
    }
    if (kind == "elem") {
        const auto caret = arg.find('^');
        if (caret == std::string_view::npos) throw InputError("elem label needs '<p>^<k>'");
        const int p = parse_positive(arg.substr(0, caret), "prime");
        const int k = parse_positive(arg.substr(caret + 1), "rank");
        if (!is_prime(p)) throw InputError("elem:<p>^<k> needs p prime");
        long long n = 1;
        for (int i = 0; i < k; ++i) {
            n *= p;
            if (n > kMaxCatalogOrder) throw InputError("elementary abelian order exceeds 64");
        }
        FiniteGroup g = make_cyclic(p);
        for (int i = 1; i < k; ++i) g = direct_product(g, make_cyclic(p));
        return g.renamed(std::string(label));
    }
    throw InputError("unknown group label '" + std::string(label) + "'");
}

std::vector<Elem> greedy_generators(const FiniteGroup& g) {
    std::vector<Elem> gens;
    std::size_t covered = 1;
    while (covered < static_cast<std::size_t>(g.order())) {
        Elem best = -1;
        std::size_t best_size = covered;
        for (Elem x = 1; x < g.order(); ++x) {
            gens.push_back(x);
            const std::size_t size = g.generated_subgroup(gens).size();
            gens.pop_back();
            if (size > best_size) {
                best_size = size;
                best = x;
            }
        }
        gens.push_back(best);
        covered = best_size;
    }
    return gens;
}

std::vector<GroupHom> enumerate_surjections(const FiniteGroup& source, const FiniteGroup& target) {
    std::vector<GroupHom> result;
    if (source.order() < target.order()) return result;
    const std::vector<Elem> gens = greedy_generators(source);
    std::vector<int> gen_order;
    for (Elem s : gens) gen_order.push_back(source.element_order(s));

    // Words reaching every element from the generators, fixed once: element
    // x = parent[x] * gens[via[x]].
    std::vector<Elem> parent(source.order(), -1), via(source.order(), -1), bfs{0};
    parent[0] = 0;
    for (std::size_t i = 0; i < bfs.size(); ++i) {
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const Elem x = source.mul(bfs[i], gens[k]);
            if (parent[x] < 0) {
                parent[x] = bfs[i];
                via[x] = static_cast<int>(k);
                bfs.push_back(x);
            }
        }
    }

    std::vector<Elem> choice(gens.size(), 0);
    std::vector<Elem> image(source.order());
    auto try_candidate = [&] {
        image[0] = 0;
        for (std::size_t i = 1; i < bfs.size(); ++i) {
            const Elem x = bfs[i];
            image[x] = target.mul(image[parent[x]], choice[via[x]]);
        }
        for (Elem a = 0; a < source.order(); ++a) {
            for (Elem b = 0; b < source.order(); ++b) {
                if (image[source.mul(a, b)] != target.mul(image[a], image[b])) return;
            }
        }
        std::vector<char> hit(target.order(), 0);
        for (Elem v : image) hit[v] = 1;
        if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return;
        result.emplace_back(source, target, image);
    };
    auto recurse = [&](auto&& self, std::size_t k) -> void {
        if (k == gens.size()) {
            try_candidate();
            return;
        }
        for (Elem t = 0; t < target.order(); ++t) {
            if (gen_order[k] % target.element_order(t) != 0) continue;
            choice[k] = t;
            self(self, k + 1);
        }
    };
    recurse(recurse, 0);
    std::sort(result.begin(), result.end(),
              [](const GroupHom& a, const GroupHom& b) { return a.image() < b.image(); });
    return result;
}

bool sylow_all_cyclic(const FiniteGroup& g) {
    int n = g.order();
    for (int p = 2; n > 1; ++p) {
        if (n % p != 0) continue;
        int sylow_order = 1;
        while (n % p == 0) {
            n /= p;
            sylow_order *= p;
        }
        auto is_p_power = [p](std::size_t m) {
            while (m % p == 0) m /= p;
            return m == 1;
        };
        // Grow a p-subgroup one p-element at a time; some extension always
        // exists until the Sylow order is reached.
        std::vector<Elem> gens;
        std::vector<Elem> sub{0};
        while (static_cast<int>(sub.size()) < sylow_order) {
            bool grown = false;
            for (Elem x = 1; x < g.order() && !grown; ++x) {
                if (!is_p_power(g.element_order(x))) continue;
                if (std::binary_search(sub.begin(), sub.end(), x)) continue;
                gens.push_back(x);
                auto candidate = g.generated_subgroup(gens);
                if (is_p_power(candidate.size())) {
                    sub = std::move(candidate);
                    grown = true;
                } else {
                    gens.pop_back();
                }
            }
            if (!grown) throw InternalError("Sylow search stalled");
        }
        const bool cyclic = std::any_of(sub.begin(), sub.end(),
                                        [&](Elem x) { return g.element_order(x) == sylow_order; });
        if (!cyclic) return false;
    }
    return true;
}

std::vector<std::string> standard_catalog_labels() {
    std::vector<std::string> labels;
    for (int n = 1; n <= 16; ++n) labels.push_back("cyclic:" + std::to_string(n));
    for (int n = 2; n <= 8; ++n) labels.push_back("dihedral:" + std::to_string(n));
    labels.insert(labels.end(), {"quaternion:8", "sym:3", "sym:4", "elem:2^2", "elem:2^3", "elem:2^4", "elem:3^2",
                                 "product:cyclic:2 x cyclic:4", "product:cyclic:2 x cyclic:6",
                                 "product:cyclic:2 x sym:3", "product:cyclic:2 x cyclic:8",
                                 "product:cyclic:4 x cyclic:4", "product:cyclic:2 x dihedral:4",
                                 "product:cyclic:2 x quaternion:8"});
    return labels;
}

std::vector<std::string> default_catalog_labels(int max_order) {
    std::vector<std::pair<int, std::string>> ordered;
    for (auto& label : standard_catalog_labels()) {
        const int n = catalog_group(label).order();
        if (n <= max_order) ordered.emplace_back(n, std::move(label));
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> out;
    for (auto& [n, label] : ordered) out.push_back(std::move(label));
    return out;
}

FiniteGroup parse_group(std::istream& in) {
    std::string line, word;
    auto next_line = [&](std::string_view what) {
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) return;
        }
        throw InputError("unexpected end of group input, expected " + std::string(what));
    };
    auto strip = [](std::string s) {
        while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
        return s;
    };

    next_line("'group'");
    line = strip(line);
    if (line.rfind("group ", 0) != 0) throw InputError("expected 'group <name>'");
    const std::string name = line.substr(6);
    next_line("'order'");
    std::istringstream os(line);
    int order = 0;
    if (!(os >> word >> order) || word != "order" || order <= 0) throw InputError("expected 'order <n>'");
    next_line("'table'");
    if (strip(line) != "table") throw InputError("expected 'table'");
    std::vector<Elem> table;
    table.reserve(static_cast<std::size_t>(order) * order);
    for (int r = 0; r < order; ++r) {
        next_line("table row");
        std::istringstream rs(line);
        for (int c = 0; c < order; ++c) {
            Elem v;
            if (!(rs >> v)) throw InputError("table row " + std::to_string(r) + " is short");
            table.push_back(v);
        }
        if (rs >> word) throw InputError("table row " + std::to_string(r) + " is long");
    }
    next_line("'end'");
    if (strip(line) != "end") throw InputError("expected 'end' after group table");
    return FiniteGroup(name, order, std::move(table));
}

void write_group(std::ostream& out, const FiniteGroup& g) {
    out << "group " << g.name() << "\norder " << g.order() << "\ntable\n";
    for (Elem a = 0; a < g.order(); ++a) {
        for (Elem b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
        out << '\n';
    }
    out << "end\n";
}

FiniteGroup load_group(const std::string& label_or_path) {
    try {
        return catalog_group(label_or_path);
    } catch (const InputError&) {
        std::ifstream file(label_or_path);
        if (!file) throw;
        return parse_group(file);
    }
}

} // namespace qmcoh
