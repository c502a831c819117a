#pragma once

#include <concepts>
#include <string>
#include <string_view>

#include "torsion_forge/integers.hpp"

namespace tforge {

/// A field is a small value object carrying the domain parameters (modulus,
/// extension polynomial, ...); elements are plain values interpreted by it.
/// Two fields compare equal iff their elements are interchangeable.
template <typename K>
concept Field =
    std::copy_constructible<K> && std::equality_comparable<K> &&
    std::regular<typename K::Element> &&
    requires(const K k, const typename K::Element a, const typename K::Element b,
             std::string_view text) {
        { k.zero() } -> std::same_as<typename K::Element>;
        { k.one() } -> std::same_as<typename K::Element>;
        { k.add(a, b) } -> std::same_as<typename K::Element>;
        { k.sub(a, b) } -> std::same_as<typename K::Element>;
        { k.mul(a, b) } -> std::same_as<typename K::Element>;
        { k.div(a, b) } -> std::same_as<typename K::Element>;
        { k.neg(a) } -> std::same_as<typename K::Element>;
        { k.inv(a) } -> std::same_as<typename K::Element>;
        { k.eq(a, b) } -> std::convertible_to<bool>;
        { k.is_zero(a) } -> std::convertible_to<bool>;
        { k.is_one(a) } -> std::convertible_to<bool>;
        { k.characteristic() } -> std::same_as<Integer>;
        { k.from_integer(Integer{}) } -> std::same_as<typename K::Element>;
        { k.format(a) } -> std::same_as<std::string>;
        { k.parse(text) } -> std::same_as<typename K::Element>;
        { k.name() } -> std::same_as<std::string>;
    };

/// Finite fields additionally enumerate their elements; index_of and
/// element_at are inverse bijections with {0, 1, ..., order-1}.
template <typename K>
concept FiniteField = Field<K> && requires(const K k, const typename K::Element a, const Integer i) {
    { k.order() } -> std::same_as<Integer>;
    { k.element_at(i) } -> std::same_as<typename K::Element>;
    { k.index_of(a) } -> std::same_as<Integer>;
};

template <Field K>
typename K::Element element_pow(const K& k, const typename K::Element& base, const Integer& e) {
    if (e < 0) throw Error("element_pow requires a non-negative exponent");
    typename K::Element acc = k.one();
    if (e == 0) return acc;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        acc = k.mul(acc, acc);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = k.mul(acc, base);
    }
    return acc;
}

} // namespace tforge
