#ifndef SFREE_HOMOMORPHISM_HPP
#define SFREE_HOMOMORPHISM_HPP

#include <memory>
#include <span>
#include <vector>

#include "sfree/alphabet.hpp"
#include "sfree/dfa.hpp"
#include "sfree/monoid.hpp"

namespace sfree {

// Letter-to-element map inducing phi : A* -> M. The image submonoid
// phi(A*) is computed once at construction.
class Homomorphism {
public:
	Homomorphism(Alphabet alphabet, std::shared_ptr<const FiniteMonoid> monoid,
	             std::vector<Element> letter_images);

	const Alphabet& alphabet() const noexcept { return alphabet_; }
	const FiniteMonoid& monoid() const noexcept { return *monoid_; }
	const std::shared_ptr<const FiniteMonoid>& monoid_ptr() const noexcept { return monoid_; }
	Element image_of(Letter a) const { return images_.at(a); }
	const std::vector<Element>& letter_images() const noexcept { return images_; }

	// phi(A*), ascending.
	const std::vector<Element>& image() const noexcept { return image_; }
	bool image_contains(Element x) const;

	Element evaluate(std::span<const Letter> word) const;

	// phi restricted to the sub-alphabet without `removed`.
	Homomorphism restrict_without(Letter removed) const;

private:
	Alphabet alphabet_;
	std::shared_ptr<const FiniteMonoid> monoid_;
	std::vector<Element> images_;
	std::vector<Element> image_;
};

// Submonoid generated by the images of `letters` (always contains 1), ascending.
std::vector<Element> image_submonoid(const Homomorphism& h, std::span<const Letter> letters);

struct TransitionMonoid {
	Homomorphism morphism;
	std::vector<Element> accepting;               // mu(L), ascending
	std::vector<std::vector<State>> transformations; // element -> state map

	const FiniteMonoid& monoid() const noexcept { return morphism.monoid(); }
};

// Transition monoid of a minimal complete DFA: element 0 is the identity
// transformation, the rest follow in breadth-first order of generation.
// Throws DfaError if `d` is not minimal, CapacityError beyond `max_size`.
TransitionMonoid transition_monoid(const Dfa& d, std::size_t max_size = default_monoid_cap);

// Automaton on the elements reachable from 1; accepts phi^-1(targets).
Dfa dfa_from_homomorphism(const Homomorphism& h, std::span<const Element> targets);

} // namespace sfree

#endif
