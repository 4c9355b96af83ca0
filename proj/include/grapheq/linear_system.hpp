#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "presentation.hpp"

namespace grapheq {

using BigInt = boost::multiprecision::cpp_int;

/// sum c_i x_i = constant, or congruent mod `modulus` when modulus >= 2.
struct LinearEquation {
    std::vector<std::pair<std::string, BigInt>> terms;
    BigInt constant = 0;
    BigInt modulus = 0;

    bool operator==(const LinearEquation &) const = default;
};

struct LinearSystem {
    std::vector<LinearEquation> equations;

    /// Unknowns in order of first appearance.
    std::vector<std::string> unknowns() const
    {
        std::vector<std::string> out;
        for (auto &e : equations)
            for (auto &t : e.terms)
                if (std::find(out.begin(), out.end(), t.first) == out.end())
                    out.push_back(t.first);
        return out;
    }

    bool operator==(const LinearSystem &) const = default;
};

enum class Solvability { Sat, Unsat };

struct SolvabilityResult {
    Solvability status = Solvability::Unsat;
    std::map<std::string, BigInt> witness;
};

using BigMatrix = std::vector<std::vector<BigInt>>;

/// U * A * V = D with D diagonal, d_i | d_{i+1}, d_i > 0 for i < rank.
struct SmithForm {
    BigMatrix d, u, v;
    std::size_t rank = 0;
};

namespace detail {

inline BigMatrix identity_matrix(std::size_t n)
{
    BigMatrix m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

inline BigInt abs_big(const BigInt &x) { return x < 0 ? BigInt(-x) : x; }

inline void row_addmul(BigMatrix &m, std::size_t dst, std::size_t src, const BigInt &q)
{
    for (std::size_t j = 0; j < m[dst].size(); ++j)
        m[dst][j] += q * m[src][j];
}

inline void col_addmul(BigMatrix &m, std::size_t dst, std::size_t src, const BigInt &q)
{
    for (auto &row : m)
        row[dst] += q * row[src];
}

inline void col_swap(BigMatrix &m, std::size_t a, std::size_t b)
{
    for (auto &row : m)
        std::swap(row[a], row[b]);
}

} // namespace detail

inline SmithForm smith_normal_form(const BigMatrix &a, std::size_t cols)
{
    using namespace detail;
    std::size_t rows = a.size();
    SmithForm f{a, identity_matrix(rows), identity_matrix(cols), 0};
    auto &d = f.d;
    for (std::size_t t = 0; t < rows && t < cols; ++t) {
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (d[i][j] != 0 && (pi == rows || abs_big(d[i][j]) < abs_big(d[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows)
            break;
        std::swap(d[t], d[pi]);
        std::swap(f.u[t], f.u[pi]);
        col_swap(d, t, pj);
        col_swap(f.v, t, pj);
        bool done = false;
        while (!done) {
            done = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d[i][t] == 0)
                    continue;
                BigInt q = d[i][t] / d[t][t];
                row_addmul(d, i, t, -q);
                row_addmul(f.u, i, t, -q);
                if (d[i][t] != 0) {
                    std::swap(d[t], d[i]);
                    std::swap(f.u[t], f.u[i]);
                    done = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d[t][j] == 0)
                    continue;
                BigInt q = d[t][j] / d[t][t];
                col_addmul(d, j, t, -q);
                col_addmul(f.v, j, t, -q);
                if (d[t][j] != 0) {
                    col_swap(d, t, j);
                    col_swap(f.v, t, j);
                    done = false;
                }
            }
            if (!done)
                continue;
            for (std::size_t i = t + 1; i < rows && done; ++i)
                for (std::size_t j = t + 1; j < cols && done; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        row_addmul(d, t, i, 1);
                        row_addmul(f.u, t, i, 1);
                        done = false;
                    }
        }
        if (d[t][t] < 0) {
            for (auto &x : d[t])
                x = -x;
            for (auto &x : f.u[t])
                x = -x;
        }
        f.rank = t + 1;
    }
    return f;
}

inline bool satisfies(const LinearEquation &e, const std::map<std::string, BigInt> &x)
{
    BigInt lhs = 0;
    for (auto &t : e.terms) {
        auto it = x.find(t.first);
        if (it != x.end())
            lhs += t.second * it->second;
    }
    BigInt diff = lhs - e.constant;
    if (e.modulus >= 2)
        return diff % e.modulus == 0;
    return diff == 0;
}

/// Exact solvability over Z; congruences become extra integer columns.
inline SolvabilityResult solve_linear_system(const LinearSystem &sys)
{
    auto names = sys.unknowns();
    std::size_t n = names.size();
    std::size_t extra = 0;
    for (auto &e : sys.equations)
        if (e.modulus >= 2)
            ++extra;
    std::size_t cols = n + extra;
    std::size_t rows = sys.equations.size();
    BigMatrix a(rows, std::vector<BigInt>(cols, 0));
    std::vector<BigInt> b(rows, 0);
    std::size_t aux = n;
    for (std::size_t i = 0; i < rows; ++i) {
        auto &e = sys.equations[i];
        for (auto &t : e.terms) {
            auto j = static_cast<std::size_t>(std::find(names.begin(), names.end(), t.first) - names.begin());
            a[i][j] += t.second;
        }
        if (e.modulus >= 2)
            a[i][aux++] = -e.modulus;
        b[i] = e.constant;
    }
    SolvabilityResult res;
    if (cols == 0) {
        for (auto &x : b)
            if (x != 0)
                return res;
        res.status = Solvability::Sat;
        return res;
    }
    auto f = smith_normal_form(a, cols);
    std::vector<BigInt> c(rows, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < rows; ++k)
            c[i] += f.u[i][k] * b[k];
    std::vector<BigInt> y(cols, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        if (i < f.rank) {
            if (c[i] % f.d[i][i] != 0)
                return res;
            y[i] = c[i] / f.d[i][i];
        } else if (c[i] != 0) {
            return res;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        BigInt x = 0;
        for (std::size_t k = 0; k < cols; ++k)
            x += f.v[j][k] * y[k];
        res.witness[names[j]] = x;
    }
    for (auto &e : sys.equations)
        if (!satisfies(e, res.witness))
            throw Error(ErrorKind::Internal, "linear solver produced an invalid witness");
    res.status = Solvability::Sat;
    return res;
}

inline std::string to_string(const LinearEquation &e)
{
    std::ostringstream out;
    for (auto &t : e.terms)
        out << t.second << ' ' << t.first << ' ';
    out << "= " << e.constant;
    if (e.modulus >= 2)
        out << " mod " << e.modulus;
    return out.str();
}

inline std::string to_string(const LinearSystem &s)
{
    std::string out;
    for (auto &e : s.equations)
        out += to_string(e) + '\n';
    return out;
}

namespace detail {

inline BigInt parse_big(const std::string &tok, std::size_t line)
{
    std::string s = tok;
    if (!s.empty() && s[0] == '+')
        s = s.substr(1);
    bool ok = !s.empty();
    for (std::size_t i = 0; i < s.size() && ok; ++i)
        ok = std::isdigit(static_cast<unsigned char>(s[i])) || (i == 0 && s[i] == '-' && s.size() > 1);
    if (!ok)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": expected integer, got '" + tok + "'");
    return BigInt(s);
}

} // namespace detail

/// One equation per line: `3 x_b -1 y_b = 0` or `... = 1 mod 4`.
inline LinearSystem parse_linear_system(const std::string &text)
{
    LinearSystem sys;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto toks = detail::split_ws(detail::strip_comment(raw));
        if (toks.empty())
            continue;
        LinearEquation e;
        std::size_t i = 0;
        while (i < toks.size() && toks[i] != "=") {
            if (i + 1 >= toks.size() || toks[i + 1] == "=")
                throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": coefficient without unknown");
            auto c = detail::parse_big(toks[i], line);
            e.terms.push_back({toks[i + 1], c});
            i += 2;
        }
        if (i + 1 >= toks.size())
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": missing right-hand side");
        e.constant = detail::parse_big(toks[i + 1], line);
        i += 2;
        if (i < toks.size()) {
            if (toks[i] != "mod" || i + 2 != toks.size())
                throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": expected 'mod <m>'");
            e.modulus = detail::parse_big(toks[i + 1], line);
            if (e.modulus < 2)
                throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": modulus must be >= 2");
        }
        sys.equations.push_back(std::move(e));
    }
    return sys;
}

} // namespace grapheq
