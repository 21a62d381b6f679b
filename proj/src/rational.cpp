#include "riccigraph/rational.hpp"

#include <mpfr.h>

#include <charconv>
#include <cstdlib>

#include "riccigraph/errors.hpp"

namespace ricci {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty()) throw InvalidArgumentError("empty rational literal");

    Rat value;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw InvalidArgumentError("bad rational literal '" + text + "'");
        mpz_class n(num), d(den);
        if (d == 0) throw InvalidArgumentError("zero denominator in '" + text + "'");
        Rat r(n, d);
        r.canonicalize();
        value = r;
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (frac.empty()) frac = "0";
        if (!all_digits(whole) || !all_digits(frac))
            throw InvalidArgumentError("bad decimal literal '" + text + "'");
        mpz_class scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Rat r(mpz_class(whole) * scale + mpz_class(frac), scale);
        r.canonicalize();
        value = r;
    } else {
        if (!all_digits(s)) throw InvalidArgumentError("bad integer literal '" + text + "'");
        value = Rat(mpz_class(s));
    }
    return negative ? Rat(-value) : value;
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string double_to_string(double d) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
    return std::string(buf, ptr);
}

std::string rat_to_decimal_string(const Rat& r) { return double_to_string(rat_to_double(r)); }

// mpq's own conversion truncates toward zero; round to nearest instead so the
// decimal column is the shortest faithful rendering.
double rat_to_double(const Rat& r) {
    mpfr_t t;
    mpfr_init2(t, 53);
    mpfr_set_q(t, r.get_mpq_t(), MPFR_RNDN);
    double d = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return d;
}

long rat_ceil_long(const Rat& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw InvalidArgumentError("ceiling does not fit in long");
    return q.get_si();
}

}  // namespace ricci
