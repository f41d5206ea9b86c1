#pragma once

// Formal words in the SL2(O) generators {z0, sigma, mu, tau, eta}, stored in
// exponent-run normal form. CLI grammar: tokens "z0 s m t e" with integer
// exponent suffixes, e.g. "t^-1 e^2".

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wedge {

enum class Sym : int { Z0 = 0, Sigma, Mu, Tau, Eta };

inline const char* sym_token(Sym s) {
    switch (s) {
        case Sym::Z0: return "z0";
        case Sym::Sigma: return "s";
        case Sym::Mu: return "m";
        case Sym::Tau: return "t";
        case Sym::Eta: return "e";
    }
    return "?";
}

class Word {
public:
    struct Run {
        Sym sym;
        int exp;
        bool operator==(const Run&) const = default;
    };

    Word() = default;
    explicit Word(std::vector<Run> runs) : runs_(std::move(runs)) { normalize(); }

    static Word id() { return Word(); }
    static Word gen(Sym s, int exp = 1) { return Word({{s, exp}}); }

    const std::vector<Run>& runs() const { return runs_; }
    bool empty() const { return runs_.empty(); }

    bool operator==(const Word& o) const { return runs_ == o.runs_; }

    Word operator*(const Word& o) const {
        std::vector<Run> r = runs_;
        r.insert(r.end(), o.runs_.begin(), o.runs_.end());
        return Word(std::move(r));
    }

    Word inverse() const {
        std::vector<Run> r;
        r.reserve(runs_.size());
        for (auto it = runs_.rbegin(); it != runs_.rend(); ++it) r.push_back({it->sym, -it->exp});
        return Word(std::move(r));
    }

    Word pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        Word r;
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    /// Conjugate w^-1 * this * w.
    Word conjugated_by(const Word& w) const { return w.inverse() * *this * w; }

    /// Net exponent of a symbol (only meaningful for commuting subwords).
    int net_exponent(Sym s) const {
        int total = 0;
        for (const Run& r : runs_)
            if (r.sym == s) total += r.exp;
        return total;
    }

    bool uses_only(std::initializer_list<Sym> allowed) const {
        for (const Run& r : runs_) {
            bool ok = false;
            for (Sym s : allowed)
                if (r.sym == s) ok = true;
            if (!ok) return false;
        }
        return true;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (const Run& r : runs_) {
            if (!first) os << ' ';
            first = false;
            os << sym_token(r.sym);
            if (r.exp != 1) os << '^' << r.exp;
        }
        return os.str();
    }

    static Word parse(std::string_view text) {
        std::vector<Run> runs;
        size_t i = 0;
        auto skip_ws = [&] {
            while (i < text.size() && isspace(static_cast<unsigned char>(text[i]))) ++i;
        };
        skip_ws();
        while (i < text.size()) {
            Sym sym;
            if (text.compare(i, 2, "z0") == 0) {
                sym = Sym::Z0;
                i += 2;
            } else if (text[i] == 's') {
                sym = Sym::Sigma;
                ++i;
            } else if (text[i] == 'm') {
                sym = Sym::Mu;
                ++i;
            } else if (text[i] == 't') {
                sym = Sym::Tau;
                ++i;
            } else if (text[i] == 'e') {
                sym = Sym::Eta;
                ++i;
            } else {
                throw std::invalid_argument("Word::parse: unknown token in \"" + std::string(text) + "\"");
            }
            int exp = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                size_t j = i;
                if (j < text.size() && (text[j] == '-' || text[j] == '+')) ++j;
                size_t k = j;
                while (k < text.size() && isdigit(static_cast<unsigned char>(text[k]))) ++k;
                if (k == j) throw std::invalid_argument("Word::parse: bad exponent");
                exp = std::atoi(std::string(text.substr(i, k - i)).c_str());
                i = k;
            }
            runs.push_back({sym, exp});
            skip_ws();
        }
        return Word(std::move(runs));
    }

private:
    void normalize() {
        std::vector<Run> out;
        for (const Run& r : runs_) {
            if (r.exp == 0) continue;
            if (!out.empty() && out.back().sym == r.sym) {
                out.back().exp += r.exp;
                if (out.back().exp == 0) out.pop_back();
            } else {
                out.push_back(r);
            }
        }
        // Merging may create fresh adjacencies.
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i + 1 < out.size();) {
                if (out[i].sym == out[i + 1].sym) {
                    out[i].exp += out[i + 1].exp;
                    out.erase(out.begin() + static_cast<long>(i) + 1);
                    if (out[i].exp == 0) out.erase(out.begin() + static_cast<long>(i));
                    changed = true;
                } else {
                    ++i;
                }
            }
        }
        runs_ = std::move(out);
    }

    std::vector<Run> runs_;
};

} // namespace wedge
