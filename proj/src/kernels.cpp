#include <omp.h>

#include <algorithm>
#include <atomic>
#include <map>
#include <unordered_map>

#include "valq/error.hpp"
#include "valq/exactalg.hpp"

namespace valq {

namespace {

std::atomic<bool> g_parallel{true};

// dense index space for the exponents of a product a*b
struct Box {
  int nv = 0;
  std::vector<uint64_t> dims, stride;
  uint64_t size = 1;

  Box(const MPoly& a, const MPoly& b) : nv(a.nvars()), dims(nv), stride(nv) {
    auto da = a.max_degrees(), db = b.max_degrees();
    for (int i = 0; i < nv; ++i) {
      dims[i] = static_cast<uint64_t>(da[i]) + db[i] + 1;
      if (dims[i] - 1 > MPoly::kMaxExp) throw Error("OVERFLOW", "exponent too large in product");
    }
    for (int i = nv - 1; i >= 0; --i) {
      stride[i] = size;
      size = (size > (1ull << 42)) ? (1ull << 62) : size * dims[i];
    }
  }
  uint64_t index(uint64_t key) const {
    uint64_t idx = 0;
    for (int i = 0; i < nv; ++i) idx += MPoly::exp(key, i) * stride[i];
    return idx;
  }
  uint64_t key(uint64_t idx) const {
    uint64_t k = 0;
    for (int i = 0; i < nv; ++i) {
      k |= (idx / stride[i]) << MPoly::shift(i);
      idx %= stride[i];
    }
    return k;
  }
};

MPoly collect(const Box& box, std::vector<Int>& acc) {
  std::vector<MPoly::Term> out;
  for (uint64_t i = 0; i < acc.size(); ++i)
    if (acc[i] != 0) out.push_back({box.key(i), std::move(acc[i])});
  return MPoly::from_terms(box.nv, std::move(out));
}

void check_pair(const MPoly& a, const MPoly& b) {
  if (a.nvars() != b.nvars()) throw Error("VAR_MISMATCH", "product over different variable sets");
}

}  // namespace

void set_parallel_kernels(bool on) { g_parallel = on; }
bool parallel_kernels() { return g_parallel; }

MPoly mul_reference(const MPoly& a, const MPoly& b) {
  check_pair(a, b);
  std::map<uint64_t, Int> acc;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      for (int i = 0; i < a.nvars(); ++i)
        if (MPoly::exp(x.key, i) + MPoly::exp(y.key, i) > MPoly::kMaxExp)
          throw Error("OVERFLOW", "exponent too large in product");
      acc[x.key + y.key] += x.c * y.c;
    }
  std::vector<MPoly::Term> out;
  for (auto& [k, c] : acc)
    if (c != 0) out.push_back({k, c});
  return MPoly::from_terms(a.nvars(), std::move(out));
}

MPoly mul_sparse(const MPoly& a, const MPoly& b) {
  check_pair(a, b);
  Box box(a, b);  // exponent overflow check only
  std::unordered_map<uint64_t, Int> acc;
  acc.reserve(std::min<size_t>(a.size() * b.size(), 1 << 22));
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      Int& slot = acc[x.key + y.key];
      mpz_addmul(slot.get_mpz_t(), x.c.get_mpz_t(), y.c.get_mpz_t());
    }
  std::vector<MPoly::Term> out;
  out.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (c != 0) out.push_back({k, std::move(c)});
  return MPoly::from_terms(a.nvars(), std::move(out));
}

MPoly mul_dense_serial(const MPoly& a, const MPoly& b) {
  check_pair(a, b);
  Box box(a, b);
  if (box.size > (1ull << 26)) return mul_sparse(a, b);
  std::vector<Int> acc(box.size);
  std::vector<uint64_t> ib;
  ib.reserve(b.size());
  for (const auto& y : b.terms()) ib.push_back(box.index(y.key));
  for (const auto& x : a.terms()) {
    uint64_t ia = box.index(x.key);
    for (size_t j = 0; j < ib.size(); ++j)
      mpz_addmul(acc[ia + ib[j]].get_mpz_t(), x.c.get_mpz_t(), b.terms()[j].c.get_mpz_t());
  }
  return collect(box, acc);
}

MPoly mul_dense_parallel(const MPoly& a, const MPoly& b) {
  check_pair(a, b);
  Box box(a, b);
  int nt = omp_get_max_threads();
  if (box.size > (1ull << 26) / static_cast<uint64_t>(std::max(nt, 1))) return mul_sparse(a, b);
  std::vector<uint64_t> ia, ib;
  for (const auto& x : a.terms()) ia.push_back(box.index(x.key));
  for (const auto& y : b.terms()) ib.push_back(box.index(y.key));
  std::vector<std::vector<Int>> part(nt);
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  long na = static_cast<long>(ta.size());
#pragma omp parallel num_threads(nt)
  {
    int id = omp_get_thread_num();
    auto& acc = part[id];
    acc.resize(box.size);
#pragma omp for schedule(static)
    for (long i = 0; i < na; ++i)
      for (size_t j = 0; j < ib.size(); ++j)
        mpz_addmul(acc[ia[i] + ib[j]].get_mpz_t(), ta[i].c.get_mpz_t(), tb[j].c.get_mpz_t());
  }
  long n = static_cast<long>(box.size);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k)
    for (int p = 1; p < nt; ++p)
      if (!part[p].empty() && part[p][k] != 0) part[0][k] += part[p][k];
  return collect(box, part[0]);
}

MPoly mul_kronecker(const MPoly& a, const MPoly& b) {
  check_pair(a, b);
  Box box(a, b);
  auto maxbits = [](const MPoly& p) {
    size_t m = 0;
    for (const auto& t : p.terms()) m = std::max(m, mpz_sizeinbase(t.c.get_mpz_t(), 2));
    return m;
  };
  size_t cnt = std::min(a.size(), b.size());
  size_t bits = maxbits(a) + maxbits(b) + mpz_sizeinbase(Int(cnt).get_mpz_t(), 2) + 2;
  size_t L = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;  // limbs per slot
  if (box.size > (1ull << 40) / L) return mul_sparse(a, b);

  auto pack = [&](const MPoly& p) {
    uint64_t top = 0;
    for (const auto& t : p.terms()) top = std::max(top, box.index(t.key));
    size_t n = (top + 1) * L;
    std::vector<mp_limb_t> pos(n, 0), neg(n, 0);
    for (const auto& t : p.terms()) {
      auto& dst = t.c > 0 ? pos : neg;
      size_t sz = mpz_size(t.c.get_mpz_t());
      const mp_limb_t* src = mpz_limbs_read(t.c.get_mpz_t());
      std::copy(src, src + sz, dst.begin() + box.index(t.key) * L);
    }
    mpz_t P, N;
    Int out;
    auto strip = [](std::vector<mp_limb_t>& v) {
      long s = static_cast<long>(v.size());
      while (s > 0 && v[s - 1] == 0) --s;
      return s;
    };
    long sp = strip(pos), sn = strip(neg);
    mpz_roinit_n(P, pos.data(), sp);
    mpz_roinit_n(N, neg.data(), sn);
    mpz_sub(out.get_mpz_t(), P, N);
    return out;
  };

  Int A = pack(a);
  Int B = (&a == &b) ? A : pack(b);
  Int prod;
  mpz_mul(prod.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  int sign = mpz_sgn(prod.get_mpz_t());
  size_t plimbs = mpz_size(prod.get_mpz_t());
  const mp_limb_t* pl = mpz_limbs_read(prod.get_mpz_t());

  Int half, full;
  mpz_setbit(half.get_mpz_t(), L * GMP_NUMB_BITS - 1);
  mpz_setbit(full.get_mpz_t(), L * GMP_NUMB_BITS);
  std::vector<MPoly::Term> out;
  int carry = 0;
  std::vector<mp_limb_t> slot(L);
  for (uint64_t k = 0; k < box.size; ++k) {
    size_t lo = k * L;
    if (lo >= plimbs && carry == 0) break;
    for (size_t i = 0; i < L; ++i) slot[i] = (lo + i < plimbs) ? pl[lo + i] : 0;
    long s = static_cast<long>(L);
    while (s > 0 && slot[s - 1] == 0) --s;
    mpz_t u;
    mpz_roinit_n(u, slot.data(), s);
    Int d(u);
    if (carry) d += 1;
    if (d >= half) {
      d -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    if (d != 0) {
      if (sign < 0) d = -d;
      out.push_back({box.key(k), std::move(d)});
    }
  }
  return MPoly::from_terms(a.nvars(), std::move(out));
}

MPoly mul(const MPoly& a, const MPoly& b) {
  check_pair(a, b);
  int nv = a.nvars();
  if (a.is_zero() || b.is_zero()) return MPoly(nv);
  if (a.is_monomial()) return b.times_monomial(a.leading().key, a.leading().c);
  if (b.is_monomial()) return a.times_monomial(b.leading().key, b.leading().c);
  uint64_t work = static_cast<uint64_t>(a.size()) * b.size();
  Box box(a, b);
  bool dense = box.size <= 8 * work + 4096;
  if (!dense) return mul_sparse(a, b);
  if (work >= 4096) return mul_kronecker(a, b);
  if (g_parallel && work >= 1024 && omp_get_max_threads() > 1) return mul_dense_parallel(a, b);
  return mul_dense_serial(a, b);
}

}  // namespace valq
