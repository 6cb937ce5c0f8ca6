#include "qpmap/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qpmap {

namespace {

std::string str(const Rational& v) { return to_string(v); }

// Wraps negative values in parentheses for use inside products.
std::string factor(const Rational& v) { return sgn(v) < 0 ? "(" + str(v) + ")" : str(v); }

void finalize(ConditionReport& c) {
    c.verdict = c.witnesses.empty() ? Verdict::holds : Verdict::violated;
}

std::string first_failure(const SymplecticReport& r) {
    const std::pair<const char*, const ConditionReport*> conds[] = {
        {"a", &r.cond_a}, {"b", &r.cond_b}, {"c", &r.cond_c}, {"d", &r.cond_d}};
    for (const auto& [name, c] : conds) {
        if (c->verdict == Verdict::violated) {
            return std::string("cond (") + name + "): " + c->witnesses.front().text;
        }
    }
    return {};
}

}  // namespace

SymplecticReport check_theorem1(const QPMap& map) {
    SymplecticReport r;
    r.classifier = Classifier::theorem_conditions;
    const std::size_t n = map.n();
    const std::size_t m = map.m();
    if (n % 2 != 0) {
        r.reason = "odd dimension n = " + std::to_string(n);
        return r;
    }
    const std::size_t s = n / 2;
    r.s = s;
    const RationalMatrix& a = map.a();
    const RationalMatrix& b = map.b();
    const RationalVector& lambda = map.lambda();

    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            Rational sum = a(i, j) + a(s + i, j);
            if (!is_zero(sum)) {
                r.cond_a.witnesses.push_back(
                    {{i + 1, j + 1},
                     {sum},
                     "i=" + std::to_string(i + 1) + ",j=" + std::to_string(j + 1) + ": " + str(a(i, j)) + " + " +
                         factor(a(s + i, j)) + " = " + str(sum) + " ≠ 0"});
            }
        }
    }
    finalize(r.cond_a);

    for (std::size_t i = 0; i < s; ++i) {
        Rational sum = lambda[i] + lambda[s + i];
        if (!is_zero(sum)) {
            r.cond_b.witnesses.push_back({{i + 1},
                                          {sum},
                                          "i=" + std::to_string(i + 1) + ": " + str(lambda[i]) + " + " +
                                              factor(lambda[s + i]) + " = " + str(sum) + " ≠ 0"});
        }
    }
    finalize(r.cond_b);

    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            if (i == j) {
                continue;
            }
            for (std::size_t p = 0; p < m; ++p) {
                if (is_zero(a(i, p))) {
                    continue;
                }
                for (std::size_t col : {j, s + j}) {
                    if (!is_zero(b(p, col))) {
                        Rational prod = a(i, p) * b(p, col);
                        r.cond_c.witnesses.push_back(
                            {{i + 1, j + 1, p + 1},
                             {prod},
                             "i=" + std::to_string(i + 1) + ",j=" + std::to_string(j + 1) + ",p=" +
                                 std::to_string(p + 1) + ": A[" + std::to_string(i + 1) + "," + std::to_string(p + 1) +
                                 "]·B[" + std::to_string(p + 1) + "," + std::to_string(col + 1) + "] = " + str(a(i, p)) +
                                 "·" + factor(b(p, col)) + " = " + str(prod) + " ≠ 0"});
                    }
                }
            }
        }
    }
    finalize(r.cond_c);

    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t p = 0; p < m; ++p) {
            Rational diff = b(p, i) - b(p, s + i);
            Rational prod = a(i, p) * diff;
            if (!is_zero(prod)) {
                r.cond_d.witnesses.push_back({{i + 1, p + 1},
                                              {prod},
                                              "i=" + std::to_string(i + 1) + ",p=" + std::to_string(p + 1) + ": " +
                                                  str(a(i, p)) + "·(" + str(b(p, i)) + "-" + factor(b(p, s + i)) +
                                                  ") = " + str(prod) + " ≠ 0"});
            }
        }
    }
    finalize(r.cond_d);

    r.is_symplectic = r.cond_a.holds() && r.cond_b.holds() && r.cond_c.holds() && r.cond_d.holds();
    if (!r.is_symplectic) {
        r.reason = first_failure(r);
        return r;
    }

    // Under (a)-(d) a nonzero column of A touches exactly one pair.
    r.pairing.assign(m, 0);
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t i = 0; i < s && r.pairing[p] == 0; ++i) {
            if (!is_zero(a(i, p))) {
                r.pairing[p] = i + 1;
            }
        }
        for (std::size_t i = 0; i < s && r.pairing[p] == 0; ++i) {
            if (!is_zero(b(p, i)) || !is_zero(b(p, s + i))) {
                r.pairing[p] = i + 1;
            }
        }
    }
    return r;
}

SymplecticReport check_pattern(const QPMap& map) {
    const std::size_t n = map.n();
    if (n % 2 != 0) {
        throw Error(ErrorCode::OddDimension, "zero-pattern classification needs even n, got " + std::to_string(n));
    }
    SymplecticReport r;
    r.classifier = Classifier::zero_pattern;
    const std::size_t s = n / 2;
    const std::size_t m = map.m();
    r.s = s;
    const RationalMatrix& a = map.a();
    const RationalMatrix& b = map.b();
    const RationalVector& lambda = map.lambda();

    for (std::size_t i = 0; i < s; ++i) {
        Rational sum = lambda[i] + lambda[s + i];
        if (!is_zero(sum)) {
            r.cond_b.witnesses.push_back({{i + 1}, {sum}, "i=" + std::to_string(i + 1) + ": λ sum = " + str(sum) + " ≠ 0"});
        }
    }

    std::vector<std::size_t> pairing(m, 0);
    for (std::size_t p = 0; p < m; ++p) {
        std::vector<std::size_t> support;
        for (std::size_t k = 0; k < n; ++k) {
            if (!is_zero(b(p, k))) {
                support.push_back(k);
            }
        }
        const bool paired_support = support.size() == 2 && support[0] < s && support[1] == support[0] + s;
        if (!paired_support) {
            std::string cols;
            for (std::size_t k : support) {
                cols += (cols.empty() ? "" : ",") + std::to_string(k + 1);
            }
            r.cond_c.witnesses.push_back(
                {{p + 1}, {}, "p=" + std::to_string(p + 1) + ": row of B is nonzero at columns {" + cols + "}"});
        } else {
            const std::size_t ip = support[0];
            pairing[p] = ip + 1;
            if (b(p, ip) != b(p, s + ip)) {
                r.cond_d.witnesses.push_back({{p + 1, ip + 1},
                                              {b(p, ip), b(p, s + ip)},
                                              "p=" + std::to_string(p + 1) + ",i=" + std::to_string(ip + 1) + ": " +
                                                  str(b(p, ip)) + " ≠ " + str(b(p, s + ip))});
            }
        }

        // Column p of A must sit on one pair (the same one as B's row when
        // that is determined) and cancel across it.
        std::vector<std::size_t> a_support;
        for (std::size_t k = 0; k < n; ++k) {
            if (!is_zero(a(k, p))) {
                a_support.push_back(k);
            }
        }
        std::optional<std::size_t> pair = pairing[p] != 0 ? std::optional<std::size_t>(pairing[p] - 1) : std::nullopt;
        bool a_ok = true;
        for (std::size_t k : a_support) {
            const std::size_t idx = k % s;
            if (!pair) {
                pair = idx;
            }
            if (idx != *pair) {
                a_ok = false;
            }
        }
        if (!a_ok) {
            r.cond_a.witnesses.push_back(
                {{p + 1}, {}, "p=" + std::to_string(p + 1) + ": column of A is not supported on a single pair"});
        } else if (pair) {
            Rational sum = a(*pair, p) + a(s + *pair, p);
            if (!is_zero(sum)) {
                r.cond_a.witnesses.push_back({{p + 1, *pair + 1},
                                              {sum},
                                              "p=" + std::to_string(p + 1) + ",i=" + std::to_string(*pair + 1) + ": " +
                                                  str(a(*pair, p)) + " + " + factor(a(s + *pair, p)) + " = " + str(sum) +
                                                  " ≠ 0"});
            }
        }
    }
    finalize(r.cond_a);
    finalize(r.cond_b);
    finalize(r.cond_c);
    finalize(r.cond_d);

    r.is_symplectic = r.cond_a.holds() && r.cond_b.holds() && r.cond_c.holds() && r.cond_d.holds();
    if (r.is_symplectic) {
        r.pairing = std::move(pairing);
    } else {
        r.reason = first_failure(r);
    }
    return r;
}

Matrix symplectic_form(std::size_t s) {
    Matrix sm(2 * s, 2 * s);
    for (std::size_t i = 0; i < s; ++i) {
        sm(i, s + i) = -1.0;
        sm(s + i, i) = 1.0;
    }
    return sm;
}

namespace {

std::size_t half_dimension(const QPMap& map) {
    if (map.n() % 2 != 0) {
        throw Error(ErrorCode::OddDimension, "symplectic form needs even n, got " + std::to_string(map.n()));
    }
    return map.n() / 2;
}

}  // namespace

double numeric_symplectic_residual(const QPMap& map, const State& x) {
    const std::size_t s = half_dimension(map);
    const Matrix l = jacobian(map, x);
    const Matrix sm = symplectic_form(s);
    return max_abs(l.transposed() * sm * l - sm);
}

Matrix q_matrix(const QPMap& map, const State& x) {
    const std::size_t s = half_dimension(map);
    const Matrix l = jacobian(map, x);
    Matrix q(s, s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < s; ++k) {
                sum += l(s + k, s + i) * l(k, j) - l(k, s + i) * l(s + k, j);
            }
            q(i, j) = sum;
        }
    }
    return q;
}

double jacobian_determinant(const QPMap& map, const State& x) {
    return determinant(jacobian(map, x));
}

RankReport rank_bounds(const QPMap& map) {
    RankReport r;
    r.rank_b = rank(map.b());
    r.rank_a = rank(map.a());
    r.rank_m = rank(map.m_matrix());
    if (map.n() % 2 == 0) {
        r.s = map.n() / 2;
        r.bound_satisfied = r.rank_b <= *r.s && r.rank_m <= *r.s;
    }
    return r;
}

std::vector<ConservedProduct> conserved_products(const QPMap& map) {
    const SymplecticReport report = check_theorem1(map);
    if (!report.is_symplectic) {
        throw Error(ErrorCode::NotSymplectic, "map is not symplectic: " + report.reason);
    }
    std::vector<ConservedProduct> out;
    for (std::size_t i = 1; i <= *report.s; ++i) {
        out.push_back({i, *report.s});
    }
    return out;
}

std::string describe(const SymplecticReport& report) {
    std::ostringstream os;
    const std::pair<const char*, const ConditionReport*> conds[] = {
        {"a", &report.cond_a}, {"b", &report.cond_b}, {"c", &report.cond_c}, {"d", &report.cond_d}};
    for (const auto& [name, c] : conds) {
        os << "cond (" << name << "): ";
        switch (c->verdict) {
            case Verdict::holds: os << "holds\n"; break;
            case Verdict::not_applicable: os << "not applicable\n"; break;
            case Verdict::violated:
                os << "violated (" << c->witnesses.size() << " witness" << (c->witnesses.size() == 1 ? "" : "es")
                   << ")\n";
                for (const Witness& w : c->witnesses) {
                    os << "  cond (" << name << "): " << w.text << "\n";
                }
                break;
        }
    }
    return os.str();
}

}  // namespace qpmap
