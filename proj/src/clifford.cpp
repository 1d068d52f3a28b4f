// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#include "qcomp/clifford.hpp"

#include <bit>
#include <sstream>

namespace qcomp {

namespace {
int popcount(unsigned m) { return std::popcount(m); }
int top_bit(unsigned m) { return 31 - std::countl_zero(m); }

void require_same_algebra(const CliffordElem& a, const CliffordElem& b) {
  check(a.algebra() && b.algebra(), errc::form_mismatch,
        "operation on a detached Clifford element");
  check(a.algebra() == b.algebra() ||
            a.algebra()->form() == b.algebra()->form(),
        errc::form_mismatch, "Clifford elements over different forms");
}
}  // namespace

// --- CliffordElem ---

CliffordElem::CliffordElem(CliffordAlgebraPtr alg,
                           std::map<unsigned, Scalar> coeffs)
    : alg_(std::move(alg)), c_(std::move(coeffs)) {
  for (auto it = c_.begin(); it != c_.end();)
    it = it->second.is_zero() ? c_.erase(it) : std::next(it);
}

Scalar CliffordElem::coeff(unsigned mask) const {
  auto it = c_.find(mask);
  return it == c_.end() ? Scalar::zero(alg_->form().field()) : it->second;
}

CliffordElem CliffordElem::operator+(const CliffordElem& o) const {
  require_same_algebra(*this, o);
  std::map<unsigned, Scalar> r = c_;
  for (const auto& [m, c] : o.c_) {
    auto it = r.find(m);
    if (it == r.end())
      r.emplace(m, c);
    else
      it->second += c;
  }
  return CliffordElem(alg_, std::move(r));
}

CliffordElem CliffordElem::operator-(const CliffordElem& o) const {
  return *this + (-o);
}

CliffordElem CliffordElem::operator-() const {
  std::map<unsigned, Scalar> r = c_;
  for (auto& [m, c] : r) c = -c;
  return CliffordElem(alg_, std::move(r));
}

CliffordElem CliffordElem::operator*(const CliffordElem& o) const {
  require_same_algebra(*this, o);
  return alg_->mul(*this, o);
}

CliffordElem CliffordElem::scaled(const Scalar& s) const {
  std::map<unsigned, Scalar> r = c_;
  for (auto& [m, c] : r) c *= s;
  return CliffordElem(alg_, std::move(r));
}

bool CliffordElem::operator==(const CliffordElem& o) const {
  require_same_algebra(*this, o);
  return c_ == o.c_;
}

bool CliffordElem::is_even() const {
  for (const auto& [m, c] : c_)
    if (popcount(m) % 2 != 0) return false;
  return true;
}

bool CliffordElem::is_odd() const {
  for (const auto& [m, c] : c_)
    if (popcount(m) % 2 == 0) return false;
  return true;
}

int CliffordElem::cmp(const CliffordElem& a, const CliffordElem& b) {
  require_same_algebra(a, b);
  unsigned total = a.alg_->mask_count();
  for (unsigned m = 0; m < total; ++m) {
    int c = Scalar::cmp(a.coeff(m), b.coeff(m));
    if (c != 0) return c;
  }
  return 0;
}

std::string CliffordElem::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : c_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (int i = 0; i < 32; ++i)
      if (m & (1u << i)) os << "e" << (i + 1);
  }
  return os.str();
}

// --- CliffordAlgebra ---

CliffordAlgebra::CliffordAlgebra(const QuadForm& q) : q_(q) {}

CliffordAlgebraPtr CliffordAlgebra::make(const QuadForm& q) {
  check(q.dim() <= 12, errc::bad_input, "Clifford algebra dimension cap");
  auto alg = std::shared_ptr<CliffordAlgebra>(new CliffordAlgebra(q));
  alg->build_tables();
  return alg;
}

CliffordElem CliffordAlgebra::mul_mono_gen(unsigned mask, int i) const {
  // e_mask * e_i by moving e_i leftward past higher generators
  const FieldSpec& fs = q_.field();
  if (mask == 0)
    return CliffordElem(shared_from_this(), {{1u << i, Scalar::one(fs)}});
  int m = top_bit(mask);
  unsigned rest = mask ^ (1u << m);
  if (m < i)
    return CliffordElem(shared_from_this(),
                        {{mask | (1u << i), Scalar::one(fs)}});
  if (m == i) {
    Scalar qe = q_.coeff(i, i);
    if (qe.is_zero()) return zero();
    return CliffordElem(shared_from_this(), {{rest, qe}});
  }
  // e_rest e_m e_i = b(e_i, e_m) e_rest - (e_rest e_i) e_m
  std::map<unsigned, Scalar> out;
  Scalar b = q_.polar_matrix().at(i, m);
  if (!b.is_zero()) out[rest] = b;
  const std::map<unsigned, Scalar>& sub = gen_table_[rest * q_.dim() + i];
  for (const auto& [m2, c] : sub) {
    unsigned key = m2 | (1u << m);
    auto it = out.find(key);
    if (it == out.end())
      out.emplace(key, -c);
    else
      it->second -= c;
  }
  return CliffordElem(shared_from_this(), std::move(out));
}

void CliffordAlgebra::build_tables() {
  int n = q_.dim();
  unsigned total = 1u << n;
  gen_table_.resize(static_cast<size_t>(total) * n);
  for (unsigned mask = 0; mask < total; ++mask)
    for (int i = 0; i < n; ++i)
      gen_table_[mask * n + i] = mul_mono_gen(mask, i).coeffs();
  even_index_.assign(total, -1);
  for (unsigned mask = 0; mask < total; ++mask)
    if (popcount(mask) % 2 == 0) {
      even_index_[mask] = static_cast<int>(even_masks_.size());
      even_masks_.push_back(mask);
    }
}

CliffordElem CliffordAlgebra::zero() const {
  return CliffordElem(shared_from_this(), {});
}

CliffordElem CliffordAlgebra::one() const {
  return scalar_elem(Scalar::one(q_.field()));
}

CliffordElem CliffordAlgebra::scalar_elem(const Scalar& c) const {
  if (c.is_zero()) return zero();
  return CliffordElem(shared_from_this(), {{0u, c}});
}

CliffordElem CliffordAlgebra::generator(int i) const {
  check(0 <= i && i < q_.dim(), errc::bad_input, "generator index");
  return CliffordElem(shared_from_this(),
                      {{1u << i, Scalar::one(q_.field())}});
}

CliffordElem CliffordAlgebra::monomial(unsigned mask, const Scalar& c) const {
  check(mask < mask_count(), errc::bad_input, "monomial mask out of range");
  if (c.is_zero()) return zero();
  return CliffordElem(shared_from_this(), {{mask, c}});
}

CliffordElem CliffordAlgebra::from_vector(const Vec& x) const {
  check(static_cast<int>(x.size()) == q_.dim(), errc::bad_input,
        "vector dimension mismatch");
  std::map<unsigned, Scalar> c;
  for (int i = 0; i < q_.dim(); ++i)
    if (!x[i].is_zero()) c[1u << i] = x[i];
  return CliffordElem(shared_from_this(), std::move(c));
}

std::optional<Vec> CliffordAlgebra::as_vector(const CliffordElem& x) const {
  Vec v = zero_vec(q_.field(), q_.dim());
  for (const auto& [m, c] : x.coeffs()) {
    if (popcount(m) != 1) return std::nullopt;
    v[top_bit(m)] = c;
  }
  return v;
}

CliffordElem CliffordAlgebra::mul(const CliffordElem& a,
                                  const CliffordElem& b) const {
  int n = q_.dim();
  std::map<unsigned, Scalar> out;
  for (const auto& [mb, cb] : b.coeffs()) {
    for (const auto& [ma, ca] : a.coeffs()) {
      std::map<unsigned, Scalar> cur{{ma, ca * cb}};
      for (int i = 0; i < n; ++i) {
        if (!(mb & (1u << i))) continue;
        std::map<unsigned, Scalar> next;
        for (const auto& [m, c] : cur) {
          for (const auto& [m2, c2] : gen_table_[m * n + i]) {
            Scalar add = c * c2;
            auto it = next.find(m2);
            if (it == next.end())
              next.emplace(m2, add);
            else
              it->second += add;
          }
        }
        for (auto it = next.begin(); it != next.end();)
          it = it->second.is_zero() ? next.erase(it) : std::next(it);
        cur = std::move(next);
      }
      for (const auto& [m, c] : cur) {
        auto it = out.find(m);
        if (it == out.end())
          out.emplace(m, c);
        else
          it->second += c;
      }
    }
  }
  return CliffordElem(shared_from_this(), std::move(out));
}

CliffordElem CliffordAlgebra::tau(const CliffordElem& x) const {
  int n = q_.dim();
  CliffordElem out = zero();
  for (const auto& [mask, c] : x.coeffs()) {
    CliffordElem cur = scalar_elem(c);
    for (int i = n - 1; i >= 0; --i)
      if (mask & (1u << i)) cur = mul(cur, generator(i));
    out = out + cur;
  }
  return out;
}

Vec CliffordAlgebra::dense(const CliffordElem& x) const {
  Vec v = zero_vec(q_.field(), static_cast<int>(mask_count()));
  for (const auto& [m, c] : x.coeffs()) v[m] = c;
  return v;
}

CliffordElem CliffordAlgebra::from_dense(const Vec& v) const {
  check(v.size() == mask_count(), errc::bad_input, "dense size mismatch");
  std::map<unsigned, Scalar> c;
  for (unsigned m = 0; m < mask_count(); ++m)
    if (!v[m].is_zero()) c[m] = v[m];
  return CliffordElem(shared_from_this(), std::move(c));
}

Vec CliffordAlgebra::dense_even(const CliffordElem& x) const {
  check(x.is_even(), errc::bad_parity, "dense_even of non-even element");
  Vec v = zero_vec(q_.field(), static_cast<int>(even_masks_.size()));
  for (const auto& [m, c] : x.coeffs()) v[even_index_[m]] = c;
  return v;
}

CliffordElem CliffordAlgebra::from_dense_even(const Vec& v) const {
  check(v.size() == even_masks_.size(), errc::bad_input,
        "dense_even size mismatch");
  std::map<unsigned, Scalar> c;
  for (size_t k = 0; k < even_masks_.size(); ++k)
    if (!v[k].is_zero()) c[even_masks_[k]] = v[k];
  return CliffordElem(shared_from_this(), std::move(c));
}

int CliffordAlgebra::even_index(unsigned mask) const {
  int idx = even_index_[mask];
  check(idx >= 0, errc::bad_parity, "odd mask in even index");
  return idx;
}

std::optional<CliffordElem> CliffordAlgebra::inverse_even(
    const CliffordElem& x) const {
  check(x.is_even(), errc::bad_parity, "inverse_even of non-even element");
  const FieldSpec& fs = q_.field();
  int d = static_cast<int>(even_masks_.size());
  Matrix lm(fs, d, d);
  for (int j = 0; j < d; ++j) {
    CliffordElem img = mul(x, monomial(even_masks_[j], Scalar::one(fs)));
    Vec col = dense_even(img);
    for (int i = 0; i < d; ++i) lm.at(i, j) = col[i];
  }
  LinearSolution sol = linear_solve(lm, dense_even(one()));
  if (!sol.consistent) return std::nullopt;
  CliffordElem inv = from_dense_even(sol.particular);
  if (!(mul(x, inv) == one()) || !(mul(inv, x) == one())) return std::nullopt;
  return inv;
}

const EvenCenter& CliffordAlgebra::even_center() const {
  std::call_once(center_once_, [this] {
    const FieldSpec& fs = q_.field();
    int n = q_.dim();
    int d = static_cast<int>(even_masks_.size());
    // cut the even part down by commutation with the e_i e_j, pair by pair
    std::vector<CliffordElem> basis;
    for (int k = 0; k < d; ++k)
      basis.push_back(monomial(even_masks_[k], Scalar::one(fs)));
    for (int i = 0; i < n && basis.size() > 2; ++i)
      for (int j = i + 1; j < n && basis.size() > 2; ++j) {
        CliffordElem g = mul(generator(i), generator(j));
        Matrix m(fs, d, static_cast<int>(basis.size()));
        for (size_t k = 0; k < basis.size(); ++k) {
          Vec col = dense_even(mul(basis[k], g) - mul(g, basis[k]));
          for (int r = 0; r < d; ++r) m.at(r, static_cast<int>(k)) = col[r];
        }
        std::vector<Vec> ker = kernel_basis(m);
        std::vector<CliffordElem> next;
        for (const Vec& lam : ker) {
          CliffordElem e = zero();
          for (size_t k = 0; k < basis.size(); ++k)
            if (!lam[k].is_zero()) e = e + basis[k].scaled(lam[k]);
          next.push_back(e);
        }
        basis = std::move(next);
      }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        CliffordElem g = mul(generator(i), generator(j));
        for (const CliffordElem& z : basis)
          check(mul(z, g) == mul(g, z), errc::inconsistent,
                "even center candidate fails to commute");
      }
    check(basis.size() == 2, errc::inconsistent,
          "even center has unexpected dimension");
    SpanSolver span(fs, d);
    span.add(dense_even(one()));
    CliffordElem w = zero();
    for (const CliffordElem& z : basis)
      if (span.add(dense_even(z))) {
        w = z;
        break;
      }
    check(span.dim() == 2, errc::inconsistent, "center without independent w");
    auto c = span.coords(dense_even(mul(w, w)));
    check(c.has_value(), errc::inconsistent, "w^2 outside span{1,w}");
    auto ec = std::make_unique<EvenCenter>();
    ec->w = w;
    ec->alpha = (*c)[0];
    ec->beta = (*c)[1];
    center_ = std::move(ec);
  });
  return *center_;
}

std::optional<std::pair<Scalar, Scalar>> CliffordAlgebra::center_coords(
    const CliffordElem& x) const {
  if (!x.is_even()) return std::nullopt;
  const EvenCenter& z = even_center();
  SpanSolver span(q_.field(), static_cast<int>(even_masks_.size()));
  span.add(dense_even(one()));
  span.add(dense_even(z.w));
  auto c = span.coords(dense_even(x));
  if (!c) return std::nullopt;
  return std::make_pair((*c)[0], (*c)[1]);
}

CliffordElem CliffordAlgebra::iota(const CliffordElem& z) const {
  auto c = center_coords(z);
  check(c.has_value(), errc::bad_input, "iota of a non-central element");
  const EvenCenter& ec = even_center();
  // a + b w -> (a + b beta) - b w
  return scalar_elem(c->first + c->second * ec.beta) - ec.w.scaled(c->second);
}

Scalar CliffordAlgebra::center_norm(const CliffordElem& z) const {
  CliffordElem prod = mul(z, iota(z));
  auto c = center_coords(prod);
  check(c.has_value() && c->second.is_zero(), errc::inconsistent,
        "center norm is not scalar");
  return c->first;
}

Polarization CliffordAlgebra::center_idempotents() const {
  const FieldSpec& fs = q_.field();
  const EvenCenter& ec = even_center();
  // z = x + y w idempotent with y != 0:
  //   x^2 + y^2 alpha = x  and  2 x y + y^2 beta = y
  std::optional<std::pair<Scalar, Scalar>> sol;
  if (fs.characteristic() != 2) {
    Scalar disc = ec.beta * ec.beta + Scalar::from_int(fs, 4) * ec.alpha;
    auto root = is_square(disc);
    if (root && !root->is_zero()) {
      Scalar y = root->inverse();
      Scalar x = (Scalar::one(fs) - ec.beta * y) / Scalar::from_int(fs, 2);
      sol = std::make_pair(x, y);
    }
  } else if (!ec.beta.is_zero()) {
    Scalar y = ec.beta.inverse();
    Scalar gamma = ec.alpha * y * y;
    for (long t = 0; t < fs.p(); ++t) {
      Scalar x = Scalar::from_int(fs, t);
      if (x * x + x == gamma) {
        sol = std::make_pair(x, y);
        break;
      }
    }
  }
  check(sol.has_value(), errc::nontrivial_discriminant,
        "even center is not split");
  CliffordElem z1 = scalar_elem(sol->first) + ec.w.scaled(sol->second);
  CliffordElem z2 = one() - z1;
  check(mul(z1, z1) == z1 && mul(z2, z2) == z2 && mul(z1, z2).is_zero(),
        errc::inconsistent, "central idempotent equations failed");
  Polarization p;
  if (CliffordElem::cmp(z1, z2) <= 0) {
    p.zplus = z1;
    p.zminus = z2;
  } else {
    p.zplus = z2;
    p.zminus = z1;
  }
  return p;
}

CliffordElem CliffordAlgebra::c_of_matrix(const Matrix& a) const {
  Matrix t = a * q_.polar_inverse();
  CliffordElem out = zero();
  for (int i = 0; i < q_.dim(); ++i)
    for (int j = 0; j < q_.dim(); ++j) {
      if (t.at(i, j).is_zero()) continue;
      out = out + mul(generator(i), generator(j)).scaled(t.at(i, j));
    }
  return out;
}

// --- CliffordRep ---

CliffordRep::CliffordRep(CliffordAlgebraPtr alg, std::vector<Matrix> gens,
                         std::vector<int> block_a, std::vector<int> block_b,
                         Vec e, Vec eprime)
    : alg_(std::move(alg)), dim_(gens.empty() ? 0 : gens[0].rows()),
      gens_(std::move(gens)), block_a_(std::move(block_a)),
      block_b_(std::move(block_b)), e_(std::move(e)),
      eprime_(std::move(eprime)) {
  const QuadForm& q = alg_->form();
  const FieldSpec& fs = q.field();
  int n = q.dim();
  check(static_cast<int>(gens_.size()) == n, errc::bad_input,
        "generator image count");
  Matrix id = Matrix::identity(fs, dim_);
  for (int i = 0; i < n; ++i) {
    check(gens_[i] * gens_[i] == id.scaled(q.coeff(i, i)),
          errc::relation_violation, "rho(e_i)^2 != q(e_i)");
    for (int j = i + 1; j < n; ++j)
      check(gens_[i] * gens_[j] + gens_[j] * gens_[i] ==
                id.scaled(q.polar_matrix().at(i, j)),
            errc::relation_violation, "anticommutation relation failed");
  }
  check(q.polar(e_, eprime_).is_one(), errc::bad_input,
        "semitrace pair with b(e, e') != 1");
  table_.resize(alg_->mask_count(), id);
  for (unsigned mask = 1; mask < alg_->mask_count(); ++mask) {
    int m = top_bit(mask);
    table_[mask] = table_[mask ^ (1u << m)] * gens_[m];
  }
}

CliffordRep CliffordRep::hyperbolic_rep(const CliffordAlgebraPtr& alg,
                                        long bound) {
  const QuadForm& q = alg->form();
  const FieldSpec& fs = q.field();
  int n = q.dim();
  check(n % 2 == 0, errc::not_hyperbolic, "odd dimension");
  WittDecomposition w = witt_decompose(q, bound);
  check(static_cast<int>(w.pairs.size()) == n / 2, errc::not_hyperbolic,
        "form is not hyperbolic");
  int m = n / 2;
  int d = 1 << m;
  auto sign_below = [&](unsigned t, int k) {
    int s = popcount(t & ((1u << k) - 1));
    return s % 2 == 0 ? Scalar::one(fs) : -Scalar::one(fs);
  };
  std::vector<Matrix> cr(m, Matrix(fs, d, d)), an(m, Matrix(fs, d, d));
  for (int k = 0; k < m; ++k)
    for (unsigned t = 0; t < static_cast<unsigned>(d); ++t) {
      if (!(t & (1u << k)))
        cr[k].at(static_cast<int>(t | (1u << k)), static_cast<int>(t)) =
            sign_below(t, k);
      else
        an[k].at(static_cast<int>(t ^ (1u << k)), static_cast<int>(t)) =
            sign_below(t, k);
    }
  std::vector<Vec> cols;
  for (const auto& [u, v] : w.pairs) {
    cols.push_back(u);
    cols.push_back(v);
  }
  Matrix wmat = Matrix::from_cols(fs, cols);
  Matrix winv = inverse(wmat);
  std::vector<Matrix> gens;
  for (int i = 0; i < n; ++i) {
    Vec coord = winv.col(i);
    Matrix g(fs, d, d);
    for (int k = 0; k < m; ++k) {
      if (!coord[2 * k].is_zero()) g = g + cr[k].scaled(coord[2 * k]);
      if (!coord[2 * k + 1].is_zero()) g = g + an[k].scaled(coord[2 * k + 1]);
    }
    gens.push_back(g);
  }
  std::vector<int> even_block, odd_block;
  for (int t = 0; t < d; ++t)
    (popcount(static_cast<unsigned>(t)) % 2 == 0 ? even_block : odd_block)
        .push_back(t);
  return CliffordRep(alg, std::move(gens), std::move(even_block),
                     std::move(odd_block), w.pairs[0].first,
                     w.pairs[0].second);
}

Matrix CliffordRep::apply(const CliffordElem& x) const {
  Matrix out(alg_->form().field(), dim_, dim_);
  for (const auto& [m, c] : x.coeffs()) out = out + table_[m].scaled(c);
  return out;
}

Scalar CliffordRep::trd(const CliffordElem& x) const {
  return apply(x).trace();
}

std::pair<Matrix, Matrix> CliffordRep::even_blocks(
    const CliffordElem& x) const {
  check(x.is_even(), errc::bad_parity, "blocks of a non-even element");
  Matrix m = apply(x);
  const FieldSpec& fs = alg_->form().field();
  auto extract = [&](const std::vector<int>& rows,
                     const std::vector<int>& colsel) {
    Matrix s(fs, static_cast<int>(rows.size()),
             static_cast<int>(colsel.size()));
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < colsel.size(); ++j)
        s.at(static_cast<int>(i), static_cast<int>(j)) =
            m.at(rows[i], colsel[j]);
    return s;
  };
  check(extract(block_a_, block_b_).is_zero() &&
            extract(block_b_, block_a_).is_zero(),
        errc::bad_parity, "even image is not block-diagonal");
  return {extract(block_a_, block_a_), extract(block_b_, block_b_)};
}

// --- semitraces ---

Scalar semitrace_full(const CliffordRep& rep, const CliffordElem& s) {
  const CliffordAlgebraPtr& alg = rep.algebra();
  check(alg->tau(s) == s, errc::not_symmetric,
        "semitrace of a non-tau-symmetric element");
  CliffordElem ee =
      alg->mul(alg->from_vector(rep.e()), alg->from_vector(rep.eprime()));
  return rep.trd(alg->mul(ee, s));
}

std::pair<Scalar, Scalar> semitrace_even(const CliffordRep& rep,
                                         const Polarization& pol,
                                         const CliffordElem& s) {
  const CliffordAlgebraPtr& alg = rep.algebra();
  check(s.is_even(), errc::bad_parity, "even semitrace of an odd element");
  check(alg->tau(s) == s, errc::not_symmetric,
        "semitrace of a non-tau0-symmetric element");
  CliffordElem ee =
      alg->mul(alg->from_vector(rep.e()), alg->from_vector(rep.eprime()));
  auto [ba, bb] = rep.even_blocks(alg->mul(ee, s));
  auto [pa, pb] = rep.even_blocks(pol.zplus);
  if (pa.is_identity() && pb.is_zero()) return {ba.trace(), bb.trace()};
  check(pa.is_zero() && pb.is_identity(), errc::inconsistent,
        "polarization does not project onto a block");
  return {bb.trace(), ba.trace()};
}

// --- extended Clifford group ---

std::optional<OmegaElem> omega_membership(const CliffordAlgebraPtr& alg,
                                          const CliffordElem& xi) {
  if (!xi.is_even()) return std::nullopt;
  auto inv = alg->inverse_even(xi);
  if (!inv) return std::nullopt;
  CliffordElem mu = alg->mul(alg->tau(xi), xi);
  if (!alg->center_coords(mu).has_value()) return std::nullopt;
  CliffordElem iota_mu = alg->iota(mu);
  const QuadForm& q = alg->form();
  std::vector<Vec> cols;
  for (int k = 0; k < q.dim(); ++k) {
    CliffordElem u =
        alg->mul(iota_mu, alg->mul(xi, alg->mul(alg->generator(k), *inv)));
    auto v = alg->as_vector(u);
    if (!v) return std::nullopt;
    cols.push_back(*v);
  }
  OmegaElem om;
  om.xi = xi;
  om.xi_inv = *inv;
  om.mu_bar = mu;
  om.chi0 = Matrix::from_cols(q.field(), cols);
  auto mult = similitude_multiplier_of(q, q, om.chi0);
  if (!mult) return std::nullopt;
  if (!(*mult == alg->center_norm(mu))) return std::nullopt;
  om.chi0_multiplier = *mult;
  return om;
}

// --- Lie algebras ---

GammaBasis lie_gamma_basis(const CliffordAlgebraPtr& alg) {
  const QuadForm& q = alg->form();
  const FieldSpec& fs = q.field();
  int n = q.dim();
  GammaBasis gb;
  SpanSolver span(fs, static_cast<int>(alg->mask_count()) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CliffordElem e = alg->mul(alg->generator(i), alg->generator(j));
      if (e.is_zero() || !span.add(alg->dense_even(e))) continue;
      // preimage under the standard identification: x -> e_i b(e_j, x)
      Matrix a(fs, n, n);
      for (int c = 0; c < n; ++c) a.at(i, c) = q.polar_matrix().at(j, c);
      gb.elems.push_back(e);
      gb.pre.push_back(a);
    }
  return gb;
}

namespace {

// Matrix of x -> tau0(xi) x + x xi on V, for even xi; nullopt when some
// image leaves V.
std::optional<Matrix> omega_action_matrix(const CliffordAlgebraPtr& alg,
                                          const CliffordElem& xi) {
  const QuadForm& q = alg->form();
  CliffordElem txi = alg->tau(xi);
  std::vector<Vec> cols;
  for (int k = 0; k < q.dim(); ++k) {
    CliffordElem g = alg->generator(k);
    CliffordElem img = alg->mul(txi, g) + alg->mul(g, xi);
    auto v = alg->as_vector(img);
    if (!v) return std::nullopt;
    cols.push_back(*v);
  }
  return Matrix::from_cols(q.field(), cols);
}

}  // namespace

std::pair<Scalar, Scalar> mudot_bar_of(const CliffordAlgebraPtr& alg,
                                       const CliffordElem& xi) {
  CliffordElem s = alg->tau(xi) + xi;
  auto c = alg->center_coords(s);
  check(c.has_value(), errc::not_in_omega, "tau0(xi) + xi outside Z");
  return *c;
}

Matrix chi0dot_of(const CliffordAlgebraPtr& alg, const CliffordElem& xi) {
  mudot_bar_of(alg, xi);  // validates the Z condition
  auto h = omega_action_matrix(alg, xi);
  check(h.has_value(), errc::not_in_omega,
        "twisted action does not preserve V");
  return adjoint_involution(alg->form(), *h);  // h = sigma_b(chi0dot)
}

OmegaLieBasis lie_omega_basis(const CliffordAlgebraPtr& alg) {
  const QuadForm& q = alg->form();
  const FieldSpec& fs = q.field();
  int n = q.dim();
  int d = static_cast<int>(alg->mask_count()) / 2;
  alg->center_idempotents();  // nontrivial_discriminant guard

  const EvenCenter& ec = alg->even_center();
  // echelonized Z = span{1, w} over even dense coordinates
  Vec one_d = alg->dense_even(alg->one());
  Vec w_d = alg->dense_even(ec.w);
  w_d = vsub(w_d, vscale(w_d[0], one_d));  // clear the unit coordinate
  int wpiv = -1;
  for (int r = 0; r < d; ++r)
    if (!w_d[r].is_zero()) {
      wpiv = r;
      break;
    }
  check(wpiv > 0, errc::inconsistent, "degenerate center echelon");
  Vec w_e = vscale(w_d[wpiv].inverse(), w_d);

  std::vector<Vec> rows;
  // condition 1: (tau0 + id) xi in Z; project images to the quotient by Z
  {
    std::vector<Vec> cols;
    for (int c = 0; c < d; ++c) {
      CliffordElem b = alg->monomial(alg->even_mask(c), Scalar::one(fs));
      Vec v = alg->dense_even(alg->tau(b) + b);
      v = vsub(v, vscale(v[0], one_d));
      v = vsub(v, vscale(v[wpiv], w_e));
      cols.push_back(v);
    }
    Matrix m = Matrix::from_cols(fs, cols);
    for (int r = 0; r < d; ++r) {
      if (r == 0 || r == wpiv) continue;
      rows.push_back(m.row(r));
    }
  }
  // condition 2: tau0(xi) x_k + x_k xi in V for every generator x_k
  unsigned total = alg->mask_count();
  for (int k = 0; k < n; ++k) {
    CliffordElem g = alg->generator(k);
    std::vector<Vec> cols;
    for (int c = 0; c < d; ++c) {
      CliffordElem b = alg->monomial(alg->even_mask(c), Scalar::one(fs));
      cols.push_back(alg->dense(alg->mul(alg->tau(b), g) + alg->mul(g, b)));
    }
    Matrix full = Matrix::from_cols(fs, cols);
    for (unsigned m = 0; m < total; ++m) {
      if (popcount(m) % 2 == 0) continue;  // even rows vanish identically
      if (popcount(m) == 1) continue;      // V coordinates are free
      rows.push_back(full.row(static_cast<int>(m)));
    }
  }
  Matrix sys = Matrix::from_rows(fs, rows);
  std::vector<Vec> ker = kernel_basis(sys);
  OmegaLieBasis ob;
  for (const Vec& v : ker) {
    CliffordElem xi = alg->from_dense_even(v);
    ob.xi.push_back(xi);
    auto h = omega_action_matrix(alg, xi);
    check(h.has_value(), errc::inconsistent,
          "omega solution violates the V condition");
    ob.chi0dot.push_back(adjoint_involution(q, *h));
  }
  return ob;
}

// --- proper/improper test (declared in quadform.hpp) ---

bool proper_test(const QuadForm& q, const Matrix& g) {
  auto mu = similitude_multiplier_of(q, q, g);
  check(mu.has_value(), errc::bad_input, "proper_test of a non-similitude");
  CliffordAlgebraPtr alg = CliffordAlgebra::make(q);
  const EvenCenter& ec = alg->even_center();
  Scalar mu_inv = mu->inverse();
  // C_0(g) on an even monomial e_S: mu^{-|S|/2} prod g(e_s)
  auto c0 = [&](const CliffordElem& x) {
    CliffordElem out = alg->zero();
    for (const auto& [mask, c] : x.coeffs()) {
      CliffordElem cur = alg->scalar_elem(c);
      for (int i = 0; i < q.dim(); ++i)
        if (mask & (1u << i)) cur = alg->mul(cur, alg->from_vector(g.col(i)));
      for (int t = 0; t < popcount(mask) / 2; ++t) cur = cur.scaled(mu_inv);
      out = out + cur;
    }
    return out;
  };
  CliffordElem img = c0(ec.w);
  if (img == ec.w) return true;
  check(img == alg->iota(ec.w), errc::inconsistent,
        "C0(g) does not act on the center as an automorphism");
  return false;
}

}  // namespace qcomp
