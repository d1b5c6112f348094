#include "sfree/local_divisor.hpp"

#include <algorithm>

#include "sfree/error.hpp"

namespace sfree {

namespace {

std::vector<Element> carrier_of(const FiniteMonoid& m, Element c) {
	std::vector<bool> left(m.size(), false), right(m.size(), false);
	for (Element y = 0; y < m.size(); ++y) {
		left[m.multiply(c, y)] = true;
		right[m.multiply(y, c)] = true;
	}
	std::vector<Element> out;
	for (Element x = 0; x < m.size(); ++x)
		if (left[x] && right[x]) out.push_back(x);
	return out;
}

FiniteMonoid build_divisor(const FiniteMonoid& m, Element c, const std::vector<Element>& carrier,
                           const std::vector<std::optional<Element>>& local) {
	const std::size_t n = carrier.size();
	// left[u]: all x with x.c = u;  right[v]: all y with c.y = v
	std::vector<std::vector<Element>> left(m.size()), right(m.size());
	for (Element x = 0; x < m.size(); ++x) {
		left[m.multiply(x, c)].push_back(x);
		right[m.multiply(c, x)].push_back(x);
	}
	std::vector<Element> table(n * n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) {
			Element u = carrier[i], v = carrier[j];
			Element product = m.multiply(left[u].front(), v);
			for (Element x : left[u])
				for (Element y : right[v])
					if (m.multiply(m.multiply(x, c), y) != product || m.multiply(x, v) != product)
						throw MonoidError("local divisor product is not well defined at (" +
						                  std::to_string(u) + "," + std::to_string(v) + ")");
			if (!local[product])
				throw MonoidError("local divisor product leaves cM ∩ Mc");
			table[i * n + j] = *local[product];
		}
	return FiniteMonoid(n, std::move(table), *local[c]);
}

} // namespace

LocalDivisor::LocalDivisor(const FiniteMonoid& base, Element c)
	: c_(c), carrier_(base.contains(c) ? carrier_of(base, c) : std::vector<Element>{}),
	  local_index_(base.size()),
	  divisor_([&] {
		  if (!base.contains(c)) throw MonoidError("center " + std::to_string(c) + " is not a monoid element");
		  for (std::size_t i = 0; i < carrier_.size(); ++i) local_index_[carrier_[i]] = i;
		  return build_divisor(base, c, carrier_, local_index_);
	  }()) {
	if (c != base.identity() && !is_aperiodic(base)) {
		if (carrier_.size() >= base.size())
			throw MonoidError("local divisor at a non-identity element is not smaller than an aperiodic base");
		if (is_aperiodic(divisor_))
			throw MonoidError("local divisor of an aperiodic monoid is not aperiodic");
	}
}

std::optional<Element> LocalDivisor::from_base(Element x) const {
	if (x >= local_index_.size()) return std::nullopt;
	return local_index_[x];
}

Element psi_image(const Homomorphism& h, Letter c, Element t) {
	if (c >= h.alphabet().size()) throw AlphabetError("letter index outside alphabet");
	std::vector<Letter> others;
	for (Letter a = 0; a < h.alphabet().size(); ++a)
		if (a != c) others.push_back(a);
	auto generated = image_submonoid(h, others);
	if (!std::binary_search(generated.begin(), generated.end(), t))
		throw MonoidError("element " + std::to_string(t) + " is not in the image of the other letters");
	const FiniteMonoid& m = h.monoid();
	Element cc = h.image_of(c);
	return m.multiply(m.multiply(cc, t), cc);
}

} // namespace sfree
