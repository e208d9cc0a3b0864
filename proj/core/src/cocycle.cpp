#include "rwadic/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "rwadic/adic.hpp"

namespace rwadic {

namespace {

// enumerate admissible words of a given length in lexicographic order
void admissible_words(const TransitionSystem& ts, int len, std::vector<Word>& out) {
    const int d = ts.alphabet_size();
    Word w;
    w.reserve(static_cast<std::size_t>(len));
    std::vector<Symbol> choice(static_cast<std::size_t>(len), -1);
    int level = 0;
    while (level >= 0) {
        Symbol s = choice[static_cast<std::size_t>(level)] + 1;
        while (s < d && level > 0 && !ts.allowed(w[static_cast<std::size_t>(level - 1)], s)) ++s;
        if (s >= d) {
            choice[static_cast<std::size_t>(level)] = -1;
            --level;
            if (!w.empty()) w.pop_back();
            continue;
        }
        choice[static_cast<std::size_t>(level)] = s;
        w.push_back(s);
        if (level == len - 1) {
            out.push_back(w);
            w.pop_back();
        } else {
            ++level;
        }
    }
}

// integer row-style Hermite reduction; returns canonical basis rows
std::vector<std::vector<std::int64_t>> hermite_basis(std::vector<std::vector<std::int64_t>> rows) {
    if (rows.empty()) return {};
    const std::size_t k = rows[0].size();
    std::vector<std::vector<std::int64_t>> basis;
    std::size_t col = 0;
    while (col < k && !rows.empty()) {
        // euclid on the current column
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() ||
                    std::llabs(rows[i][col]) < std::llabs(rows[best][col]))
                    best = i;
            }
            if (best == rows.size()) break;  // column clear
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == best || rows[i][col] == 0) continue;
                std::int64_t q = rows[i][col] / rows[best][col];
                for (std::size_t j = 0; j < k; ++j)
                    rows[i][j] = checked_sub(rows[i][j], checked_mul(q, rows[best][j]));
            }
            bool column_clear = true;
            for (std::size_t i = 0; i < rows.size() && column_clear; ++i)
                column_clear = i == best || rows[i][col] == 0;
            if (column_clear) {
                if (rows[best][col] < 0)
                    for (auto& v : rows[best]) v = -v;
                basis.push_back(rows[best]);
                rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
                break;
            }
        }
        // drop rows that became zero
        rows.erase(std::remove_if(rows.begin(), rows.end(),
                                  [](const std::vector<std::int64_t>& r) {
                                      return std::all_of(r.begin(), r.end(),
                                                         [](std::int64_t v) { return v == 0; });
                                  }),
                   rows.end());
        ++col;
    }
    // reduce entries above each pivot for a canonical form
    for (std::size_t i = basis.size(); i-- > 0;) {
        std::size_t pcol = 0;
        while (pcol < basis[i].size() && basis[i][pcol] == 0) ++pcol;
        if (pcol == basis[i].size()) continue;
        const std::int64_t p = basis[i][pcol];  // positive after the sign fix above
        for (std::size_t r = 0; r < i; ++r) {
            std::int64_t q = basis[r][pcol] / p;
            if (basis[r][pcol] % p < 0) q -= 1;  // floor division keeps remainders in [0, p)
            for (std::size_t j = 0; j < basis[r].size(); ++j)
                basis[r][j] = checked_sub(basis[r][j], checked_mul(q, basis[i][j]));
        }
    }
    return basis;
}

int real_rank(const std::vector<std::vector<double>>& vectors) {
    if (vectors.empty()) return 0;
    std::vector<std::vector<double>> m = vectors;
    const std::size_t cols = m[0].size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t piv = row;
        for (std::size_t i = row + 1; i < m.size(); ++i)
            if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
        if (std::abs(m[piv][col]) < 1e-9) continue;
        std::swap(m[piv], m[row]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row) continue;
            double fct = m[i][col] / m[row][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= fct * m[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace

Cocycle::Cocycle(std::shared_ptr<const TransitionSystem> ts, GroupSpec spec, int range,
                 std::vector<std::pair<Word, GroupElement>> entries)
    : ts_(std::move(ts)), spec_(spec), range_(range) {
    spec_.validate();
    if (range_ < 1) throw Error("cocycle range must be at least 1");
    admissible_words(*ts_, range_, words_);

    std::uint64_t span = 1;
    for (int j = 0; j < range_; ++j) {
        if (span > (std::uint64_t{1} << 40))
            throw DepthTooLargeError("cocycle range too large for the packed table");
        span *= static_cast<std::uint64_t>(ts_->alphabet_size());
    }
    table_.assign(span, GroupElement::zero(spec_));
    present_.assign(span, 0);

    for (auto& [w, v] : entries) {
        ts_->require_admissible(w);
        if (static_cast<int>(w.size()) != range_)
            throw GroupMismatchError("table word length does not match the range");
        if (static_cast<int>(v.lattice.size()) != spec_.lattice_rank ||
            static_cast<int>(v.continuous.size()) != spec_.continuous_rank())
            throw GroupMismatchError("table value does not match the group spec");
        std::uint64_t code = encode(w);
        if (present_[code]) throw GroupMismatchError("duplicate table entry");
        table_[code] = std::move(v);
        present_[code] = 1;
    }
    for (const Word& w : words_)
        if (!present_[encode(w)])
            throw GroupMismatchError("missing table entry for an admissible word");
}

std::uint64_t Cocycle::encode(const Word& w) const {
    std::uint64_t code = 0;
    for (std::size_t j = w.size(); j-- > 0;)
        code = code * static_cast<std::uint64_t>(ts_->alphabet_size()) +
               static_cast<std::uint64_t>(w[j]);
    return code;
}

const GroupElement& Cocycle::value(const Word& w) const {
    if (static_cast<int>(w.size()) != range_) throw GroupMismatchError("word length mismatch");
    std::uint64_t code = encode(w);
    if (!present_[code]) throw InadmissibleWordError("word is not admissible");
    return table_[code];
}

const GroupElement& Cocycle::value_at(const Point& x, std::int64_t pos) const {
    Word w(static_cast<std::size_t>(range_));
    for (int j = 0; j < range_; ++j) w[static_cast<std::size_t>(j)] = x.at(pos + j);
    return value(w);
}

std::vector<double> Cocycle::mean(const MeasurePair& m) const {
    std::vector<double> e(static_cast<std::size_t>(spec_.dimension), 0.0);
    for (const Word& w : words_) {
        double p = m.mu_cylinder(w);
        std::vector<double> v = value(w).as_real();
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += p * v[i];
    }
    return e;
}

double Cocycle::sup_norm() const {
    double s = 0.0;
    for (const Word& w : words_)
        for (double v : value(w).as_real()) s = std::max(s, std::abs(v));
    return s;
}

GroupElement birkhoff_sum(const Cocycle& f, const Point& x, std::int64_t n) {
    GroupElement acc = GroupElement::zero(f.spec());
    for (std::int64_t j = 1; j <= n; ++j) acc.add(f.value_at(x, j));
    return acc;
}

GroupElement psi(const Cocycle& f, const Point& x, const Point& y) {
    auto start = Point::tail_equivalence_start(x, y);
    if (!start) throw NotTailEquivalentError("points do not share a tail");
    return psi_from(f, x, y, *start);
}

GroupElement psi_from(const Cocycle& f, const Point& x, const Point& y, std::int64_t tail_start) {
    for (std::int64_t i = tail_start; i < tail_start + f.range(); ++i)
        if (x.at(i) != y.at(i))
            throw NotTailEquivalentError("points disagree at or beyond the claimed tail start");
    GroupElement acc = birkhoff_sum(f, y, tail_start - 1);
    acc.sub(birkhoff_sum(f, x, tail_start - 1));
    return acc;
}

GroupElement phi_step(const Cocycle& f, const Point& x) {
    SuccessorResult s = successor_with_depth(x);
    return psi_from(f, x, s.point, s.carry_depth + 1);
}

SkewState skew_step(const Cocycle& f, const SkewState& s) {
    SuccessorResult nx = successor_with_depth(s.base);
    GroupElement pos = s.position;
    GroupElement delta = psi_from(f, s.base, nx.point, nx.carry_depth + 1);
    pos.add(delta);
    return {nx.point, std::move(pos)};
}

SkewState shift_skew_step(const Cocycle& f, const SkewState& s) {
    GroupElement pos = s.position;
    pos.add(f.value_at(s.base, 1));
    return {s.base.shifted(1), std::move(pos)};
}

GroupSpanReport group_span(const Cocycle& f, int max_period, std::size_t word_budget) {
    const TransitionSystem& ts = f.system();
    const GroupSpec& spec = f.spec();
    const int r = f.range();

    GroupSpanReport rep;
    rep.spec = spec;

    std::vector<GroupElement> values;        // f_n over periodic points, all n
    std::vector<GroupElement> differences;   // same-n differences
    std::size_t enumerated = 0;

    for (int n = 1; n <= max_period; ++n) {
        std::vector<Word> closed;
        {
            std::vector<Word> all;
            admissible_words(ts, n, all);
            enumerated += all.size();
            if (enumerated > word_budget)
                throw PeriodBudgetExceededError("periodic-point enumeration exceeds the budget");
            for (auto& w : all)
                if (ts.allowed(w.back(), w.front())) closed.push_back(std::move(w));
        }
        std::optional<GroupElement> first;
        for (const Word& w : closed) {
            // f_n of the periodic point (w)^infty: windows wrap around
            GroupElement sum = GroupElement::zero(spec);
            Word win(static_cast<std::size_t>(r));
            for (int j = 0; j < n; ++j) {
                for (int i = 0; i < r; ++i)
                    win[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>((j + i) % n)];
                sum.add(f.value(win));
            }
            values.push_back(sum);
            if (!first) {
                first = sum;
            } else {
                GroupElement d = sum;
                d.sub(*first);
                differences.push_back(std::move(d));
            }
            rep.periodic_points_used += 1;
        }
    }

    std::vector<std::vector<std::int64_t>> g_lat, h_lat;
    std::vector<std::vector<double>> g_real_full, g_real_cont;
    for (const auto& v : differences) {
        g_lat.push_back(v.lattice);
        g_real_full.push_back(v.as_real());
        g_real_cont.push_back(v.continuous);
    }
    for (const auto& v : values) h_lat.push_back(v.lattice);

    rep.g_lattice_basis = hermite_basis(std::move(g_lat));
    rep.h_lattice_basis = hermite_basis(std::move(h_lat));
    rep.degree = real_rank(g_real_full);
    rep.continuous_rank = real_rank(g_real_cont);
    rep.lattice_rank = static_cast<int>(rep.g_lattice_basis.size());

    bool full = rep.lattice_rank == spec.lattice_rank;
    if (full) {
        // Z^k exactly: k pivots, all equal to 1 (determinant 1 in HNF)
        for (const auto& row : rep.g_lattice_basis) {
            std::int64_t pivot = 0;
            for (std::int64_t v : row)
                if (v != 0) {
                    pivot = v;
                    break;
                }
            if (pivot != 1) full = false;
        }
    }
    rep.lattice_full = spec.lattice_rank == 0 || full;
    rep.full_rank = rep.lattice_full && rep.degree == spec.dimension;
    return rep;
}

Cocycle exchangeability_cocycle(std::shared_ptr<const TransitionSystem> ts) {
    const int d = ts->alphabet_size();
    if (d < 2) throw Error("symbol-count observable needs at least two symbols");
    GroupSpec spec{d - 1, d - 1};
    std::vector<std::pair<Word, GroupElement>> entries;
    for (Symbol a = 0; a < d; ++a) {
        GroupElement v = GroupElement::zero(spec);
        if (a >= 1) v.lattice[static_cast<std::size_t>(a - 1)] = 1;
        entries.emplace_back(Word{a}, std::move(v));
    }
    return Cocycle(std::move(ts), spec, 1, std::move(entries));
}

bool almost_onto(const TransitionSystem& ts) {
    const int d = ts.alphabet_size();
    std::vector<char> seen(static_cast<std::size_t>(d), 0);
    std::queue<Symbol> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
        Symbol b = q.front();
        q.pop();
        for (Symbol c = 0; c < d; ++c) {
            if (seen[static_cast<std::size_t>(c)]) continue;
            bool shares = false;
            for (Symbol a = 0; a < d && !shares; ++a)
                shares = ts.allowed(b, a) && ts.allowed(c, a);
            if (shares) {
                seen[static_cast<std::size_t>(c)] = 1;
                q.push(c);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

}  // namespace rwadic
