#include "sfree/homomorphism.hpp"

#include <algorithm>
#include <map>

#include "sfree/error.hpp"

namespace sfree {

namespace {

std::vector<Element> closure(const FiniteMonoid& m, const std::vector<Element>& generators) {
	std::vector<bool> seen(m.size(), false);
	std::vector<Element> found{m.identity()};
	seen[m.identity()] = true;
	for (std::size_t i = 0; i < found.size(); ++i)
		for (Element g : generators) {
			Element next = m.multiply(found[i], g);
			if (!seen[next]) {
				seen[next] = true;
				found.push_back(next);
			}
		}
	std::sort(found.begin(), found.end());
	return found;
}

} // namespace

Homomorphism::Homomorphism(Alphabet alphabet, std::shared_ptr<const FiniteMonoid> monoid,
                           std::vector<Element> letter_images)
	: alphabet_(std::move(alphabet)), monoid_(std::move(monoid)), images_(std::move(letter_images)) {
	if (!monoid_) throw MonoidError("homomorphism needs a monoid");
	if (images_.size() != alphabet_.size())
		throw MonoidError("homomorphism must map every letter");
	for (Element e : images_)
		if (!monoid_->contains(e))
			throw MonoidError("letter image " + std::to_string(e) + " is not a monoid element");
	image_ = closure(*monoid_, images_);
}

bool Homomorphism::image_contains(Element x) const {
	return std::binary_search(image_.begin(), image_.end(), x);
}

Element Homomorphism::evaluate(std::span<const Letter> word) const {
	Element acc = monoid_->identity();
	for (Letter a : word) {
		if (a >= images_.size()) throw AlphabetError("letter index outside alphabet");
		acc = monoid_->multiply(acc, images_[a]);
	}
	return acc;
}

Homomorphism Homomorphism::restrict_without(Letter removed) const {
	std::vector<Element> kept;
	for (Letter a = 0; a < images_.size(); ++a)
		if (a != removed) kept.push_back(images_[a]);
	return Homomorphism(alphabet_.without(removed), monoid_, std::move(kept));
}

std::vector<Element> image_submonoid(const Homomorphism& h, std::span<const Letter> letters) {
	std::vector<Element> generators;
	for (Letter a : letters) {
		if (a >= h.alphabet().size()) throw AlphabetError("sub-alphabet letter outside alphabet");
		generators.push_back(h.image_of(a));
	}
	return closure(h.monoid(), generators);
}

TransitionMonoid transition_monoid(const Dfa& d, std::size_t max_size) {
	if (minimize(d).num_states() != d.num_states())
		throw DfaError("transition monoid requires a minimal automaton");
	const std::size_t n = d.num_states();
	const std::size_t k = d.alphabet().size();
	using Map = std::vector<State>;

	auto compose = [&](const Map& f, const Map& g) { // first f, then g
		Map r(n);
		for (State s = 0; s < n; ++s) r[s] = g[f[s]];
		return r;
	};

	std::vector<Map> letters(k, Map(n));
	for (Letter a = 0; a < k; ++a)
		for (State s = 0; s < n; ++s) letters[a][s] = d.next(s, a);

	Map id(n);
	for (State s = 0; s < n; ++s) id[s] = s;
	std::map<Map, Element> index{{id, 0}};
	std::vector<Map> elements{id};
	auto intern = [&](Map m) {
		auto [it, inserted] = index.emplace(m, elements.size());
		if (inserted) {
			if (elements.size() >= max_size)
				throw CapacityError("transition monoid exceeds " + std::to_string(max_size) + " elements");
			elements.push_back(std::move(m));
		}
		return it->second;
	};

	std::vector<Element> images(k);
	for (Letter a = 0; a < k; ++a) images[a] = intern(letters[a]);
	for (std::size_t i = 0; i < elements.size(); ++i)
		for (Letter a = 0; a < k; ++a) intern(compose(elements[i], letters[a]));

	// Closed under right multiplication by generators, hence under products.
	const std::size_t size = elements.size();
	std::vector<Element> table(size * size);
	for (Element x = 0; x < size; ++x)
		for (Element y = 0; y < size; ++y) table[x * size + y] = index.at(compose(elements[x], elements[y]));

	auto monoid = std::make_shared<const FiniteMonoid>(size, std::move(table), 0);
	std::vector<Element> accepting;
	for (Element x = 0; x < size; ++x)
		if (d.is_accepting(elements[x][d.initial()])) accepting.push_back(x);
	return TransitionMonoid{Homomorphism(d.alphabet(), std::move(monoid), std::move(images)),
	                        std::move(accepting), std::move(elements)};
}

Dfa dfa_from_homomorphism(const Homomorphism& h, std::span<const Element> targets) {
	const FiniteMonoid& m = h.monoid();
	std::vector<bool> target(m.size(), false);
	for (Element t : targets) {
		if (!m.contains(t)) throw MonoidError("target " + std::to_string(t) + " is not a monoid element");
		target[t] = true;
	}
	const std::size_t k = h.alphabet().size();
	std::vector<State> number(m.size(), m.size());
	std::vector<Element> states{m.identity()};
	number[m.identity()] = 0;
	std::vector<State> delta;
	for (std::size_t i = 0; i < states.size(); ++i)
		for (Letter a = 0; a < k; ++a) {
			Element next = m.multiply(states[i], h.image_of(a));
			if (number[next] == m.size()) {
				number[next] = states.size();
				states.push_back(next);
			}
			delta.push_back(number[next]);
		}
	std::vector<bool> accepting;
	for (Element x : states) accepting.push_back(target[x]);
	return Dfa(h.alphabet(), states.size(), 0, std::move(accepting), std::move(delta));
}

} // namespace sfree
