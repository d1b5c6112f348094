#ifndef SFREE_ERROR_HPP
#define SFREE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sfree {

// Base of every error raised by the library. `code()` is a short
// machine-readable tag that the CLI prints in front of the message.
class Error : public std::runtime_error {
public:
	Error(std::string code, const std::string& what)
		: std::runtime_error(what), code_(std::move(code)) {}

	const std::string& code() const noexcept { return code_; }

private:
	std::string code_;
};

class ParseError : public Error {
public:
	ParseError(std::size_t position, const std::string& what)
		: Error("parse_error", what + " at position " + std::to_string(position)),
		  position_(position) {}

	std::size_t position() const noexcept { return position_; }

private:
	std::size_t position_;
};

class AlphabetError : public Error {
public:
	explicit AlphabetError(const std::string& what) : Error("alphabet_error", what) {}
};

class DfaError : public Error {
public:
	explicit DfaError(const std::string& what) : Error("invalid_dfa", what) {}
};

class MonoidError : public Error {
public:
	explicit MonoidError(const std::string& what) : Error("invalid_monoid", what) {}
};

class CapacityError : public Error {
public:
	explicit CapacityError(const std::string& what) : Error("monoid_cap", what) {}
};

class SynthesisError : public Error {
public:
	explicit SynthesisError(const std::string& what) : Error("synthesis_error", what) {}
};

} // namespace sfree

#endif
