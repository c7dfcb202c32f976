#include "boomerang/group/group.hpp"

#include <boost/multiprecision/miller_rabin.hpp>
#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>

#include "boomerang/errors.hpp"

namespace boomerang::group {

namespace mp = boost::multiprecision;

GroupElement Group::decode_hex(std::string_view hex) const { return decode(from_hex(hex)); }

Scalar Group::random_scalar(Rng& rng) const {
  const BigInt& q = order();
  const unsigned bits = mp::msb(q) + 1;
  for (;;) {
    BigInt v = 0;
    for (unsigned got = 0; got < bits; got += 64) {
      v <<= 64;
      v |= rng();
    }
    v >>= ((bits + 63) / 64) * 64 - bits;
    if (v < q) return Scalar(std::move(v), q);
  }
}

// ---------------------------------------------------------------------------
// Schnorr subgroup of Z_p^*

namespace {

bool probably_prime(const BigInt& n) {
  std::mt19937_64 rng(0x5eed);
  return n > 1 && mp::miller_rabin_test(n, 32, rng);
}

std::string decimal(const BigInt& n) { return n.str(); }

}  // namespace

SchnorrGroup::SchnorrGroup(BigInt p, BigInt q, BigInt g)
    : p_(std::move(p)), q_(std::move(q)), g_(std::move(g)), width_(byte_width(p_)) {
  if (!probably_prime(p_)) throw UsageError("toy group modulus p is not prime");
  if (!probably_prime(q_)) throw UsageError("toy group order q is not prime");
  if ((p_ - 1) % q_ != 0) throw UsageError("q does not divide p-1");
  g_ %= p_;
  if (g_ <= 1 || mp::powm(g_, q_, p_) != 1) throw UsageError("generator does not have order q");
  id_ = "toy-" + decimal(p_) + "-" + decimal(q_);
}

SchnorrGroup::SchnorrGroup(BigInt p, BigInt q)
    : SchnorrGroup(p, q, [&] {
        if (q <= 1 || p <= 2 || (p - 1) % q != 0) throw UsageError("q does not divide p-1");
        for (BigInt h = 2; h < 1024 && h < p; ++h)
          if (mp::powm(h, q, p) == 1) return h;
        for (BigInt h = 2; h < p; ++h) {
          BigInt g = mp::powm(h, (p - 1) / q, p);
          if (g != 1) return g;
        }
        throw UsageError("no generator found");
      }()) {}

GroupElement SchnorrGroup::encode(const BigInt& residue) const {
  return GroupElement(to_bytes(residue, width_));
}

BigInt SchnorrGroup::residue(const GroupElement& a) const { return from_bytes(a.bytes()); }

GroupElement SchnorrGroup::multiply(const GroupElement& a, const GroupElement& b) const {
  return encode((residue(a) * residue(b)) % p_);
}

GroupElement SchnorrGroup::power(const GroupElement& a, const BigInt& e) const {
  BigInt r = e % q_;
  if (r < 0) r += q_;
  return encode(mp::powm(residue(a), r, p_));
}

GroupElement SchnorrGroup::decode(std::span<const std::uint8_t> bytes) const {
  if (bytes.size() != width_) throw ParseError("toy group element has wrong width");
  BigInt x = from_bytes(bytes);
  if (x < 1 || x >= p_ || mp::powm(x, q_, p_) != 1)
    throw ParseError("value is not an element of the order-q subgroup");
  return encode(x);
}

// ---------------------------------------------------------------------------
// secp256k1

namespace {

struct BnDeleter {
  void operator()(BIGNUM* b) const { BN_free(b); }
};
struct BnCtxDeleter {
  void operator()(BN_CTX* c) const { BN_CTX_free(c); }
};
struct PointDeleter {
  void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};
using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtxPtr = std::unique_ptr<BN_CTX, BnCtxDeleter>;
using PointPtr = std::unique_ptr<EC_POINT, PointDeleter>;

BnPtr to_bn(const BigInt& v) {
  auto bytes = to_bytes(v, byte_width(v));
  BnPtr bn(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
  if (!bn) throw std::runtime_error("BN_bin2bn failed");
  return bn;
}

BigInt from_bn(const BIGNUM* bn) {
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(BN_num_bytes(bn)));
  BN_bn2bin(bn, bytes.data());
  return from_bytes(bytes);
}

}  // namespace

struct Secp256k1Group::Impl {
  EC_GROUP* group = nullptr;
  ~Impl() { EC_GROUP_free(group); }

  PointPtr new_point() const {
    PointPtr p(EC_POINT_new(group));
    if (!p) throw std::runtime_error("EC_POINT_new failed");
    return p;
  }

  PointPtr to_point(std::span<const std::uint8_t> bytes) const {
    auto p = new_point();
    if (bytes.size() == 1 && bytes[0] == 0) {
      EC_POINT_set_to_infinity(group, p.get());
      return p;
    }
    if (bytes.size() != 33 || (bytes[0] != 0x02 && bytes[0] != 0x03))
      throw ParseError("curve point must be 33-byte compressed encoding");
    BnCtxPtr ctx(BN_CTX_new());
    if (EC_POINT_oct2point(group, p.get(), bytes.data(), bytes.size(), ctx.get()) != 1)
      throw ParseError("bytes do not encode a point on the curve");
    return p;
  }

  GroupElement encode(const EC_POINT* p) const {
    if (EC_POINT_is_at_infinity(group, p)) return GroupElement({0x00});
    BnCtxPtr ctx(BN_CTX_new());
    std::vector<std::uint8_t> out(33);
    if (EC_POINT_point2oct(group, p, POINT_CONVERSION_COMPRESSED, out.data(), out.size(),
                           ctx.get()) != out.size())
      throw std::runtime_error("EC_POINT_point2oct failed");
    return GroupElement(std::move(out));
  }
};

Secp256k1Group::Secp256k1Group() : impl_(std::make_unique<Impl>()) {
  impl_->group = EC_GROUP_new_by_curve_name(NID_secp256k1);
  if (!impl_->group) throw std::runtime_error("secp256k1 unavailable in OpenSSL");
  n_ = from_bn(EC_GROUP_get0_order(impl_->group));
}

Secp256k1Group::~Secp256k1Group() = default;

GroupElement Secp256k1Group::generator() const {
  return impl_->encode(EC_GROUP_get0_generator(impl_->group));
}

GroupElement Secp256k1Group::identity() const { return GroupElement({0x00}); }

GroupElement Secp256k1Group::multiply(const GroupElement& a, const GroupElement& b) const {
  auto pa = impl_->to_point(a.bytes());
  auto pb = impl_->to_point(b.bytes());
  auto r = impl_->new_point();
  BnCtxPtr ctx(BN_CTX_new());
  if (EC_POINT_add(impl_->group, r.get(), pa.get(), pb.get(), ctx.get()) != 1)
    throw std::runtime_error("EC_POINT_add failed");
  return impl_->encode(r.get());
}

GroupElement Secp256k1Group::power(const GroupElement& a, const BigInt& e) const {
  BigInt reduced = e % n_;
  if (reduced < 0) reduced += n_;
  auto pa = impl_->to_point(a.bytes());
  auto bn = to_bn(reduced);
  auto r = impl_->new_point();
  BnCtxPtr ctx(BN_CTX_new());
  if (EC_POINT_mul(impl_->group, r.get(), nullptr, pa.get(), bn.get(), ctx.get()) != 1)
    throw std::runtime_error("EC_POINT_mul failed");
  return impl_->encode(r.get());
}

GroupElement Secp256k1Group::decode(std::span<const std::uint8_t> bytes) const {
  return impl_->encode(impl_->to_point(bytes).get());
}

// ---------------------------------------------------------------------------

GroupParams make_group(std::string_view id) {
  if (id == "secp-curve") return std::make_shared<Secp256k1Group>();
  if (id == "toy-23-11") return std::make_shared<SchnorrGroup>(23, 11, 2);
  if (id.starts_with("toy-")) {
    auto rest = id.substr(4);
    auto dash = rest.find('-');
    if (dash == std::string_view::npos) throw UsageError("bad toy group id: " + std::string(id));
    auto parse = [&](std::string_view s) {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos)
        throw UsageError("bad toy group id: " + std::string(id));
      return BigInt(std::string(s));
    };
    return std::make_shared<SchnorrGroup>(parse(rest.substr(0, dash)), parse(rest.substr(dash + 1)));
  }
  throw UsageError("unknown group id: " + std::string(id));
}

GroupElement oneway(const Group& params, const Scalar& x) {
  if (x.modulus() != params.order()) throw UsageError("scalar is not in Z_q of this group");
  return params.power(params.generator(), x.value());
}

GroupElement combine(const Group& params, std::span<const GroupElement> elements,
                     std::span<const Scalar> coefficients) {
  if (elements.empty()) throw UsageError("combine: empty element list");
  if (elements.size() != coefficients.size())
    throw UsageError("combine: elements and coefficients differ in length");
  GroupElement acc = params.identity();
  for (std::size_t i = 0; i < elements.size(); ++i)
    acc = params.multiply(acc, params.power(elements[i], coefficients[i].value()));
  return acc;
}

}  // namespace boomerang::group
