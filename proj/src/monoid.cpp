#include "sfree/monoid.hpp"

#include <sstream>

#include "sfree/error.hpp"

namespace sfree {

FiniteMonoid::FiniteMonoid(std::size_t n, std::vector<Element> table, Element identity)
	: n_(n), table_(std::move(table)), identity_(identity) {
	if (n_ == 0) throw MonoidError("monoid must have at least one element");
	if (table_.size() != n_ * n_) throw MonoidError("multiplication table is not square");
	if (identity_ >= n_) throw MonoidError("identity " + std::to_string(identity_) + " out of range");
	for (Element e : table_)
		if (e >= n_) throw MonoidError("table entry " + std::to_string(e) + " out of range");
	for (Element x = 0; x < n_; ++x)
		if (multiply(identity_, x) != x || multiply(x, identity_) != x)
			throw MonoidError("identity law fails for element " + std::to_string(x));
	for (Element x = 0; x < n_; ++x)
		for (Element y = 0; y < n_; ++y) {
			Element xy = multiply(x, y);
			for (Element z = 0; z < n_; ++z)
				if (multiply(xy, z) != multiply(x, multiply(y, z)))
					throw MonoidError("not associative at (" + std::to_string(x) + "," +
					                  std::to_string(y) + "," + std::to_string(z) + ")");
		}
}

Element FiniteMonoid::power(Element x, std::size_t k) const {
	Element result = identity_;
	for (std::size_t i = 0; i < k; ++i) result = multiply(result, x);
	return result;
}

FiniteMonoid validate_monoid(const std::vector<std::vector<Element>>& table, Element identity) {
	const std::size_t n = table.size();
	std::vector<Element> flat;
	flat.reserve(n * n);
	for (const auto& row : table) {
		if (row.size() != n) throw MonoidError("multiplication table is not square");
		flat.insert(flat.end(), row.begin(), row.end());
	}
	return FiniteMonoid(n, std::move(flat), identity);
}

std::optional<AperiodicityWitness> is_aperiodic(const FiniteMonoid& m) {
	const std::size_t n = m.size();
	for (Element x = 0; x < n; ++x) {
		Element high = m.power(x, n);
		if (high == m.multiply(high, x)) continue;
		// first repeat in x^1, x^2, ... gives index and period
		std::vector<Element> powers{x};
		for (;;) {
			Element next = m.multiply(powers.back(), x);
			for (std::size_t i = 0; i < powers.size(); ++i)
				if (powers[i] == next)
					return AperiodicityWitness{x, i + 1, powers.size() - i};
			powers.push_back(next);
		}
	}
	return std::nullopt;
}

bool witness_holds(const FiniteMonoid& m, const AperiodicityWitness& w) {
	if (!m.contains(w.element) || w.index == 0 || w.period < 2) return false;
	Element base = m.power(w.element, w.index);
	return base == m.power(w.element, w.index + w.period) &&
	       base != m.power(w.element, w.index + 1);
}

bool unit_factorization_check(const FiniteMonoid& m) {
	const Element one = m.identity();
	for (Element x = 0; x < m.size(); ++x)
		for (Element y = 0; y < m.size(); ++y)
			if (m.multiply(x, y) == one && (x != one || y != one)) return false;
	return true;
}

FiniteMonoid parse_monoid_text(std::string_view text) {
	std::istringstream in{std::string(text)};
	long long n = -1, identity = -1;
	if (!(in >> n >> identity) || n <= 0 || identity < 0)
		throw MonoidError("monoid header must be 'n identity' with n >= 1");
	std::vector<Element> table;
	table.reserve(static_cast<std::size_t>(n * n));
	for (long long i = 0; i < n * n; ++i) {
		long long v = -1;
		if (!(in >> v) || v < 0)
			throw MonoidError("expected " + std::to_string(n * n) + " non-negative table entries");
		table.push_back(static_cast<Element>(v));
	}
	std::string rest;
	if (in >> rest) throw MonoidError("trailing data after multiplication table");
	return FiniteMonoid(static_cast<std::size_t>(n), std::move(table), static_cast<Element>(identity));
}

std::string render_monoid_text(const FiniteMonoid& m) {
	std::ostringstream out;
	out << m.size() << ' ' << m.identity() << '\n';
	for (Element x = 0; x < m.size(); ++x) {
		for (Element y = 0; y < m.size(); ++y) out << (y ? " " : "") << m.multiply(x, y);
		out << '\n';
	}
	return out.str();
}

} // namespace sfree
