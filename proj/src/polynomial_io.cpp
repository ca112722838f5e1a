#include <istream>
#include <ostream>
#include <sstream>

#include "bordism/representations.hpp"

namespace bordism {

PolyParseError::PolyParseError(std::size_t line_no, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}

NonFaithfulMonomial::NonFaithfulMonomial(std::size_t line_no, const std::string& text)
    : std::runtime_error("line " + std::to_string(line_no) + ": not a faithful monomial: " + text),
      line(line_no),
      monomial(text) {}

std::string format_functional(Mask m, int n) {
    std::string s;
    s.reserve(static_cast<std::size_t>(n));
    for (int b = n - 1; b >= 0; --b) s += ((m >> b) & 1U) != 0 ? '1' : '0';
    return s;
}

RepPolynomial parse_polynomial(std::istream& in, int n) {
    if (n < 1 || n > kMaxAmbientDim) throw std::invalid_argument("ambient dimension out of range");
    RepPolynomial f(n);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream tokens(line);
        std::vector<Mask> factors;
        std::string token;
        while (tokens >> token) {
            if (token.size() != static_cast<std::size_t>(n)) {
                throw PolyParseError(line_no, "token '" + token + "' does not have " + std::to_string(n) + " digits");
            }
            Mask m = 0;
            for (const char c : token) {
                if (c != '0' && c != '1') throw PolyParseError(line_no, "token '" + token + "' is not binary");
                m = (m << 1) | static_cast<Mask>(c - '0');
            }
            factors.push_back(m);
        }
        if (factors.size() != static_cast<std::size_t>(n + 1)) {
            throw PolyParseError(line_no, "expected " + std::to_string(n + 1) + " factors, found " +
                                              std::to_string(factors.size()));
        }
        if (!is_faithful(n, factors)) {
            const auto last = line.find_last_not_of(" \t\r");
            throw NonFaithfulMonomial(line_no, line.substr(first, last - first + 1));
        }
        f.toggle(FaithfulRep(n, std::move(factors)));
    }
    return f;
}

RepPolynomial parse_polynomial(const std::string& text, int n) {
    std::istringstream in(text);
    return parse_polynomial(in, n);
}

void write_polynomial(std::ostream& out, const RepPolynomial& f) {
    for (const auto& tau : f) out << tau.to_string() << '\n';
}

}  // namespace bordism
