#ifndef SFREE_LOCAL_DIVISOR_HPP
#define SFREE_LOCAL_DIVISOR_HPP

#include <optional>
#include <vector>

#include "sfree/homomorphism.hpp"
#include "sfree/monoid.hpp"

namespace sfree {

// The monoid (cM ∩ Mc, ∘, c) with xc ∘ cy = xcy.
//
// Divisor elements are indices into `carrier()`, which lists the base
// elements in ascending order. Construction audits that ∘ does not depend on
// the chosen factorizations, and when the base is aperiodic and c != 1 it
// also asserts that the divisor is aperiodic and strictly smaller.
class LocalDivisor {
public:
	LocalDivisor(const FiniteMonoid& base, Element c);

	Element center() const noexcept { return c_; }
	const std::vector<Element>& carrier() const noexcept { return carrier_; }
	const FiniteMonoid& divisor() const noexcept { return divisor_; }

	Element to_base(Element local) const { return carrier_.at(local); }
	std::optional<Element> from_base(Element x) const;

private:
	Element c_;
	std::vector<Element> carrier_;
	std::vector<std::optional<Element>> local_index_;
	FiniteMonoid divisor_;
};

inline LocalDivisor local_divisor(const FiniteMonoid& base, Element c) { return LocalDivisor(base, c); }

// phi(c) . t . phi(c) for t in the image of the letters other than c; this is
// phi(cvc) for every v with phi(v) = t. Returned as a base element (it lies in
// the carrier of the local divisor at phi(c)).
Element psi_image(const Homomorphism& h, Letter c, Element t);

} // namespace sfree

#endif
