#include "fermat/modp.hpp"

#include "fermat/rational_field.hpp"

#include <utility>

namespace fermat {

std::uint64_t ModP::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % ell;
  while (e > 0) {
    if (e & 1U) r = mul(r, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return r;
}

std::uint64_t ModP::inv(std::uint64_t a) const {
  std::int64_t t = 0, nt = 1;
  std::uint64_t r = ell, nr = a % ell;
  while (nr != 0) {
    const std::uint64_t q = r / nr;
    const std::int64_t tt = t - static_cast<std::int64_t>(q) * nt;
    t = nt;
    nt = tt;
    const std::uint64_t rr = r - q * nr;
    r = nr;
    nr = rr;
  }
  return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(ell))
               : static_cast<std::uint64_t>(t);
}

std::optional<std::uint64_t> ModP::reduce(const Rational& q) const {
  const mpz_class m(static_cast<unsigned long>(ell));
  const mpz_class d = q.get_den() % m;
  if (d == 0) return std::nullopt;
  mpz_class n = q.get_num() % m;
  if (n < 0) n += m;
  return mul(n.get_ui(), inv(d.get_ui()));
}

namespace {

void trim(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// a <- a mod b, b nonzero.
void rem_in_place(const ModP& f, ModPoly& a, const ModPoly& b) {
  const std::uint64_t li = f.inv(b.back());
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const std::uint64_t c = f.mul(a.back(), li);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < db; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    a.pop_back();
    trim(a);
  }
}

}  // namespace

long mod_gcd_degree(const ModP& f, ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    if (b.size() == 1) return 0;
    rem_in_place(f, a, b);
    std::swap(a, b);
  }
  return static_cast<long>(a.size()) - 1;
}

bool RationalField::certify_coprime(const Polynomial<Rational>& a,
                                    const Polynomial<Rational>& b) const {
  static const ModP f{4611686018427387847ULL};
  auto image = [&](const Polynomial<Rational>& p, ModPoly& out) {
    out.clear();
    for (const auto& c : p.coeffs) {
      auto v = f.reduce(c);
      if (!v) return false;
      out.push_back(*v);
    }
    return !out.empty() && out.back() != 0;
  };
  ModPoly ia, ib;
  if (!image(a, ia) || !image(b, ib)) return false;
  return mod_gcd_degree(f, std::move(ia), std::move(ib)) == 0;
}

}  // namespace fermat
