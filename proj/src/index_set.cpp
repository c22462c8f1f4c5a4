#include "idem/index_set.hpp"

#include <cctype>

#include "idem/error.hpp"

namespace idem {

IndexSet IndexSet::of(std::initializer_list<unsigned> members)
{
    return from_members(std::vector<unsigned>(members));
}

IndexSet IndexSet::from_members(const std::vector<unsigned>& members)
{
    IndexSet s;
    for (unsigned i : members)
        s = s.with(i);
    return s;
}

IndexSet IndexSet::with(unsigned i) const
{
    if (i < 1 || i > 64)
        throw Error(Errc::IndexOutOfRange, "index " + std::to_string(i) + " outside 1..64");
    return IndexSet(bits_ | (std::uint64_t{1} << (i - 1)));
}

IndexSet IndexSet::without(unsigned i) const
{
    if (i < 1 || i > 64)
        throw Error(Errc::IndexOutOfRange, "index " + std::to_string(i) + " outside 1..64");
    return IndexSet(bits_ & ~(std::uint64_t{1} << (i - 1)));
}

std::vector<unsigned> IndexSet::members() const
{
    std::vector<unsigned> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1)
        out.push_back(static_cast<unsigned>(std::countr_zero(b)) + 1);
    return out;
}

std::string to_string(IndexSet s)
{
    std::string out = "{";
    bool first = true;
    for (unsigned i : s.members()) {
        if (!first)
            out += ',';
        out += std::to_string(i);
        first = false;
    }
    return out + "}";
}

IndexSet parse_index_set(std::string_view text)
{
    std::string body;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            body += c;
    const bool open = !body.empty() && body.front() == '{';
    const bool close = !body.empty() && body.back() == '}';
    if (open != close || (open && body.size() < 2))
        throw Error(Errc::ParseError, "unbalanced braces in '" + std::string(text) + "'");
    if (open)
        body = body.substr(1, body.size() - 2);

    IndexSet s;
    std::size_t start = 0;
    while (start < body.size()) {
        auto end = body.find(',', start);
        if (end == std::string::npos)
            end = body.size();
        const auto token = body.substr(start, end - start);
        if (token.empty() || token.size() > 3 ||
            token.find_first_not_of("0123456789") != std::string::npos)
            throw Error(Errc::ParseError, "bad index '" + token + "' in '" + std::string(text) + "'");
        s = s.with(static_cast<unsigned>(std::stoul(token)));
        start = end + 1;
    }
    return s;
}

} // namespace idem
