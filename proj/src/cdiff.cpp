#include "diffiety/cdiff.hpp"

#include <algorithm>

#include "diffiety/jetcalc.hpp"

namespace diffiety {

namespace {

const CDiffOp::Entry kEmptyEntry;

void check_same_shape(const CDiffOp& a, const CDiffOp& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.slots() != b.slots())
        throw shape_error(std::string(what) + ": operator shapes differ");
}

/* All tau with tau_mu <= sigma_mu, together with prod_mu C(sigma_mu, tau_mu). */
std::vector<std::pair<MultiIndex, Rational>> subindices(const MultiIndex& sigma) {
    std::vector<std::pair<MultiIndex, Rational>> out{{MultiIndex{}, Rational(1)}};
    for (std::size_t mu = 0; mu < sigma.width(); ++mu) {
        std::uint32_t top = sigma.count(mu);
        if (top == 0) continue;
        std::vector<std::pair<MultiIndex, Rational>> next;
        for (const auto& [tau, c] : out) {
            Rational binom = 1;
            for (std::uint32_t r = 0; r <= top; ++r) {
                MultiIndex t = tau;
                for (std::uint32_t s = 0; s < r; ++s) t = t.plus(mu);
                next.emplace_back(t, c * binom);
                binom = binom * Rational(top - r) / Rational(r + 1);
            }
        }
        out = std::move(next);
    }
    return out;
}

using DeriveFn = std::function<IDForm(const IDForm&, const MultiIndex&)>;

DeriveFn free_derive(const JetSpace& space) {
    return [&space](const IDForm& w, const MultiIndex& sigma) {
        return total_derivative_idf(w, sigma, space);
    };
}

DeriveFn internal_derive(const EquationSystem& eq) {
    return [&eq](const IDForm& w, const MultiIndex& sigma) {
        return total_derivative_idf_internal(w, sigma, eq);
    };
}

std::vector<IDForm> apply_impl(const CDiffOp& A, const std::vector<IDForm>& arg,
                               const DeriveFn& derive) {
    if ((int)arg.size() != A.cols()) throw shape_error("apply: argument size mismatch");
    for (const IDForm& w : arg)
        if (w.slots() < A.slots()) throw shape_error("apply: argument slot count too small");
    int slots = arg.empty() ? A.slots() : arg.front().slots();
    std::vector<IDForm> out((std::size_t)A.rows(), IDForm(slots));
    for (const auto& [rc, entry] : A.entries()) {
        const IDForm& w = arg[(std::size_t)rc.second];
        for (const auto& [sigma, coeff] : entry)
            out[(std::size_t)rc.first] += coeff.reslotted(slots) * derive(w, sigma);
    }
    return out;
}

CDiffOp compose_impl(const CDiffOp& A, const CDiffOp& B, const DeriveFn& derive) {
    if (A.cols() != B.rows() || A.slots() != B.slots())
        throw shape_error("compose: operator shapes incompatible");
    CDiffOp out(A.rows(), B.cols(), A.slots());
    for (const auto& [rc, ea] : A.entries()) {
        for (int c = 0; c < B.cols(); ++c) {
            const CDiffOp::Entry& eb = B.entry(rc.second, c);
            if (eb.empty()) continue;
            for (const auto& [sigma, a] : ea) {
                for (const auto& [tau, b] : eb) {
                    /* a D_sigma b D_tau = sum_{rho<=sigma} C(sigma,rho)
                     * a·D_rho(b)·D_{sigma-rho+tau} */
                    for (const auto& [rho, binom] : subindices(sigma)) {
                        MultiIndex rest = sigma.minus(rho).value().plus(tau);
                        out.add_term(rc.first, c, rest,
                                     (a * derive(b, rho)).scaled(Expr(binom)));
                    }
                }
            }
        }
    }
    return out;
}

CDiffOp adjoint_impl(const CDiffOp& A, const DeriveFn& derive) {
    CDiffOp out(A.cols(), A.rows(), A.slots());
    for (const auto& [rc, entry] : A.entries()) {
        for (const auto& [sigma, a] : entry) {
            int sign = sigma.order() % 2 ? -1 : 1;
            /* (-1)^|sigma| D_sigma o a = (-1)^|sigma| sum_{rho<=sigma}
             * C(sigma,rho) D_rho(a) D_{sigma-rho} */
            for (const auto& [rho, binom] : subindices(sigma)) {
                out.add_term(rc.second, rc.first, sigma.minus(rho).value(),
                             derive(a, rho).scaled(Expr(binom * sign)));
            }
        }
    }
    return out;
}

}  // namespace

CDiffOp CDiffOp::identity(int size, int slots) {
    CDiffOp a(size, size, slots);
    for (int i = 0; i < size; ++i)
        a.add_term(i, i, MultiIndex{}, IDForm::from_expr(Expr(1), slots));
    return a;
}

CDiffOp CDiffOp::scalar_op(const Expr& e, int slots) {
    CDiffOp a(1, 1, slots);
    a.add_term(0, 0, MultiIndex{}, IDForm::from_expr(e, slots));
    return a;
}

CDiffOp CDiffOp::total_op(const MultiIndex& sigma, int slots) {
    CDiffOp a(1, 1, slots);
    a.add_term(0, 0, sigma, IDForm::from_expr(Expr(1), slots));
    return a;
}

const CDiffOp::Entry& CDiffOp::entry(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? kEmptyEntry : it->second;
}

void CDiffOp::add_term(int r, int c, const MultiIndex& sigma, const IDForm& coeff) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw shape_error("operator entry out of range");
    if (coeff.is_zero()) return;
    Entry& e = entries_[{r, c}];
    auto it = e.find(sigma);
    if (it == e.end()) {
        e.emplace(sigma, coeff);
        return;
    }
    it->second += coeff;
    if (it->second.is_zero()) {
        e.erase(it);
        if (e.empty()) entries_.erase({r, c});
    }
}

void CDiffOp::set_entry(int r, int c, Entry e) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw shape_error("operator entry out of range");
    for (auto it = e.begin(); it != e.end();)
        it = it->second.is_zero() ? e.erase(it) : std::next(it);
    if (e.empty())
        entries_.erase({r, c});
    else
        entries_[{r, c}] = std::move(e);
}

int CDiffOp::max_order() const {
    int n = 0;
    for (const auto& [rc, e] : entries_)
        for (const auto& [sigma, c] : e) n = std::max(n, sigma.order());
    return n;
}

CDiffOp CDiffOp::operator+(const CDiffOp& o) const {
    check_same_shape(*this, o, "sum");
    CDiffOp out = *this;
    for (const auto& [rc, e] : o.entries_)
        for (const auto& [sigma, c] : e) out.add_term(rc.first, rc.second, sigma, c);
    return out;
}

CDiffOp CDiffOp::operator-() const {
    CDiffOp out(rows_, cols_, slots_);
    for (const auto& [rc, e] : entries_)
        for (const auto& [sigma, c] : e) out.add_term(rc.first, rc.second, sigma, -c);
    return out;
}

CDiffOp CDiffOp::operator-(const CDiffOp& o) const { return *this + (-o); }

bool CDiffOp::operator==(const CDiffOp& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && slots_ == o.slots_ && entries_ == o.entries_;
}

CDiffOp CDiffOp::reslotted(int slots) const {
    CDiffOp out(rows_, cols_, slots);
    for (const auto& [rc, e] : entries_)
        for (const auto& [sigma, c] : e)
            out.add_term(rc.first, rc.second, sigma, c.reslotted(slots));
    return out;
}

std::string total_word(const MultiIndex& sigma, const JetSpace& space) {
    if (sigma.order() == 0) return "1";
    std::string out;
    for (std::size_t mu = 0; mu < sigma.width(); ++mu) {
        if (sigma.count(mu) == 0) continue;
        if (!out.empty()) out += "*";
        out += "D" + space.independents.at(mu);
        if (sigma.count(mu) > 1) out += "^" + std::to_string(sigma.count(mu));
    }
    return out;
}

std::string entry_to_string(const CDiffOp::Entry& e, const JetSpace& space) {
    if (e.empty()) return "0";
    std::string out;
    for (const auto& [sigma, coeff] : e) {
        std::string cs = coeff.to_string(space);
        std::string piece;
        if (sigma.order() == 0) {
            /* a zero-order term stands alone in sum position: no parens */
            piece = coeff.is_scalar() ? coeff.scalar_part().to_string(space) : cs;
        } else if (cs == "1") {
            piece = total_word(sigma, space);
        } else if (cs == "-1") {
            piece = "-" + total_word(sigma, space);
        } else {
            bool atom = coeff.terms().size() == 1 && cs.find(" ") == std::string::npos;
            piece = (atom ? cs : "(" + cs + ")") + "*" + total_word(sigma, space);
        }
        if (out.empty()) {
            out = piece;
        } else if (!piece.empty() && piece[0] == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
    }
    return out;
}

std::string CDiffOp::to_string(const JetSpace& space) const {
    if (rows_ == 1 && cols_ == 1) return entry_to_string(entry(0, 0), space);
    std::string out;
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            if (!out.empty()) out += "\n";
            out += "(" + std::to_string(r) + "," + std::to_string(c) +
                   "): " + entry_to_string(entry(r, c), space);
        }
    }
    return out;
}

std::vector<IDForm> apply(const CDiffOp& A, const std::vector<IDForm>& arg,
                          const JetSpace& space) {
    return apply_impl(A, arg, free_derive(space));
}

std::vector<IDForm> apply_internal(const CDiffOp& A, const std::vector<IDForm>& arg,
                                   const EquationSystem& eq) {
    /* the argument lives on the equation: pull it into internal coordinates
     * first (idempotent when it already is) */
    std::vector<IDForm> internal;
    internal.reserve(arg.size());
    for (const IDForm& w : arg) internal.push_back(restrict_idform(w, eq));
    return apply_impl(A, internal, internal_derive(eq));
}

Section apply(const CDiffOp& A, const Section& arg, const JetSpace& space) {
    std::vector<IDForm> forms;
    forms.reserve(arg.size());
    for (const Expr& e : arg) forms.push_back(IDForm::from_expr(e, A.slots()));
    std::vector<IDForm> img = apply(A, forms, space);
    Section out;
    out.reserve(img.size());
    for (const IDForm& w : img) out.push_back(w.scalar_part());
    return out;
}

Section apply_internal(const CDiffOp& A, const Section& arg, const EquationSystem& eq) {
    std::vector<IDForm> forms;
    forms.reserve(arg.size());
    for (const Expr& e : arg) forms.push_back(IDForm::from_expr(e, A.slots()));
    std::vector<IDForm> img = apply_internal(A, forms, eq);
    Section out;
    out.reserve(img.size());
    for (const IDForm& w : img) out.push_back(w.scalar_part());
    return out;
}

CDiffOp compose(const CDiffOp& A, const CDiffOp& B, const JetSpace& space) {
    return compose_impl(A, B, free_derive(space));
}

CDiffOp compose_internal(const CDiffOp& A, const CDiffOp& B, const EquationSystem& eq) {
    return compose_impl(A, B, internal_derive(eq));
}

CDiffOp adjoint(const CDiffOp& A, const JetSpace& space) {
    return adjoint_impl(A, free_derive(space));
}

CDiffOp adjoint_internal(const CDiffOp& A, const EquationSystem& eq) {
    return adjoint_impl(A, internal_derive(eq));
}

CDiffOp restrict_operator(const CDiffOp& A, const EquationSystem& eq) {
    CDiffOp out(A.rows(), A.cols(), A.slots());
    for (const auto& [rc, e] : A.entries())
        for (const auto& [sigma, c] : e)
            out.add_term(rc.first, rc.second, sigma, restrict_idform(c, eq));
    return out;
}

CDiffOp linearize(const EquationSystem& E, int slots) {
    const JetSpace& space = E.space();
    int m = space.m();
    MultiIndex t = MultiIndex::unit((std::size_t)E.leading());
    CDiffOp out(m, m, slots);
    for (int a = 0; a < m; ++a) {
        out.add_term(a, a, t, IDForm::from_expr(Expr(1), slots));
        for (const JetCoord& c : E.rhs((std::size_t)a).coords()) {
            if (c.is_independent()) continue;
            Expr da = E.rhs((std::size_t)a).partial(c);
            out.add_term(a, c.dep, c.sigma, IDForm::from_expr(-da, slots));
        }
    }
    return out;
}

std::vector<std::pair<int, SlotSet>> lifted_blocks(int m, int k) {
    if (k < 1 || k > 16) throw shape_error("lifted_blocks: level out of range");
    std::vector<SlotSet> subsets;
    for (SlotSet K = 0; K < (SlotSet{1} << (k - 1)); ++K) subsets.push_back(K);
    std::sort(subsets.begin(), subsets.end(), [](SlotSet a, SlotSet b) {
        if (slot_count(a) != slot_count(b)) return slot_count(a) < slot_count(b);
        return a < b;
    });
    std::vector<std::pair<int, SlotSet>> out;
    for (SlotSet K : subsets)
        for (int a = 0; a < m; ++a) out.emplace_back(a, K);
    return out;
}

CDiffOp lift_linearize(const EquationSystem& E, int k) {
    const JetSpace& space = E.space();
    int slots = k - 1;
    auto blocks = lifted_blocks(space.m(), k);
    int nb = (int)blocks.size();
    MultiIndex t = MultiIndex::unit((std::size_t)E.leading());

    CDiffOp out(nb, nb, slots);
    for (int r = 0; r < nb; ++r) {
        auto [a, K] = blocks[(std::size_t)r];
        /* partials of F^a = u^a_t - f^a, as slot forms */
        std::map<std::pair<int, MultiIndex>, IDForm> partials;
        partials[{a, t}] = IDForm::from_expr(Expr(1), slots);
        for (const JetCoord& c : E.rhs((std::size_t)a).coords()) {
            if (c.is_independent()) continue;
            IDForm d = IDForm::from_expr(-E.rhs((std::size_t)a).partial(c), slots);
            auto it = partials.find({c.dep, c.sigma});
            if (it == partials.end())
                partials.emplace(std::make_pair(c.dep, c.sigma), d);
            else
                it->second += d;
        }
        for (int ci = 0; ci < nb; ++ci) {
            auto [j, L] = blocks[(std::size_t)ci];
            if ((L & K) != L) continue;
            SlotSet rest = K & ~L;
            for (const auto& [key, coeff] : partials) {
                if (key.first != j) continue;
                IDForm lifted = d_K_vertical(coeff, rest);
                if (!lifted.is_zero()) out.add_term(r, ci, key.second, lifted);
            }
        }
    }
    return out;
}

CDiffOp extend_p(const CDiffOp& A, int p, int k) {
    if (p < 0) throw shape_error("extend_p: negative degree");
    if (p == 0) return A;
    if (A.slots() > k) throw shape_error("extend_p: operator already uses more slots");
    return A.reslotted(k);
}

IDForm alt_p(const std::vector<std::pair<IDForm, IDForm>>& tensor) {
    if (tensor.empty()) throw shape_error("alt_p: empty tensor");
    IDForm out(tensor.front().first.slots());
    for (const auto& [first, rest] : tensor) out += first * rest;
    return out;
}

std::vector<std::pair<IDForm, IDForm>> include_p(const IDForm& w, int p, int k) {
    if (p < 1) throw shape_error("include_p: degree must be positive");
    std::vector<std::pair<IDForm, IDForm>> out;
    for (const auto& [mono, coeff] : w.terms()) {
        int found = 0;
        for (std::size_t i = 0; i < mono.gens.size(); ++i) {
            const IDGen& g = mono.gens[i];
            if (!g.vertical() || !slot_in(g.K, k)) continue;
            ++found;
            /* move the i-th generator to the front */
            int sign = 0;
            for (std::size_t j = 0; j < i; ++j) sign += IDGen::pairing(g, mono.gens[j]);
            std::vector<IDGen> rest = mono.gens;
            rest.erase(rest.begin() + (std::ptrdiff_t)i);
            Expr c = coeff * Expr(Rational(1, p)) * Expr(sign % 2 ? -1 : 1);
            out.emplace_back(IDForm::term(w.slots(), {g}, c),
                             IDForm::term(w.slots(), rest, Expr(1)));
        }
        if (found != p) throw shape_error("include_p: form is not of slot-k Cartan degree p");
    }
    return out;
}

IDForm pair_with_duals(const std::vector<IDForm>& tuple,
                       const std::vector<std::pair<int, SlotSet>>& blocks, int k) {
    if (tuple.size() != blocks.size()) throw shape_error("pair_with_duals: size mismatch");
    if (tuple.empty()) throw shape_error("pair_with_duals: empty tuple");
    int slots = tuple.front().slots();
    IDForm out(slots);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        IDGen dual{blocks[i].second | slot_bit(k), JetCoord::jet(blocks[i].first)};
        out += tuple[i] * IDForm::generator(dual, slots);
    }
    return out;
}

bool green_check(const CDiffOp& A, const JetSpace& space) {
    for (const auto& [rc, e] : A.entries())
        for (const auto& [sigma, c] : e)
            if (!c.is_scalar()) throw shape_error("green_check: needs scalar coefficients");

    /* fresh dependents: one phi per column, one psi per row */
    std::vector<std::string> extra;
    for (int c = 0; c < A.cols(); ++c) extra.push_back("phi" + std::to_string(c));
    for (int r = 0; r < A.rows(); ++r) extra.push_back("psi" + std::to_string(r));
    JetSpace ext = space.extended(extra);
    int base = space.m();

    Section phi, psi;
    for (int c = 0; c < A.cols(); ++c)
        phi.push_back(Expr::coordinate(JetCoord::jet(base + c)));
    for (int r = 0; r < A.rows(); ++r)
        psi.push_back(Expr::coordinate(JetCoord::jet(base + A.cols() + r)));

    Section Aphi = apply(A, phi, ext);
    Section Atpsi = apply(adjoint(A, ext), psi, ext);

    Expr density(0);
    for (int r = 0; r < A.rows(); ++r) density = density + psi[(std::size_t)r] * Aphi[(std::size_t)r];
    for (int c = 0; c < A.cols(); ++c) density = density - Atpsi[(std::size_t)c] * phi[(std::size_t)c];
    return is_total_divergence(density, ext);
}

}  // namespace diffiety
