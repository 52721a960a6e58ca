#ifndef TRIFREE_CONFIG_KIND_HPP
#define TRIFREE_CONFIG_KIND_HPP

#include <trifree/error.hpp>

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trifree {

/// The eight ways two distinct triangles on convex-position vertices can
/// interact. Underlying values are the stable one-byte codes.
enum class ConfigKind : std::uint8_t {
    Taco = 0,     // shared edge, third vertices on the same side
    Mariposa = 1, // shared edge, third vertices on opposite sides
    Bat = 2,      // shared vertex, wedges disjoint
    Nested = 3,   // shared vertex, one wedge inside the other
    Crossing = 4, // shared vertex, wedges interleave
    Ears = 5,     // disjoint, separable
    Swords = 6,   // disjoint, four edge crossings
    David = 7,    // disjoint, six edge crossings
};

inline constexpr std::size_t config_kind_count = 8;

inline constexpr std::array<ConfigKind, config_kind_count> all_config_kinds{
    ConfigKind::Taco,     ConfigKind::Mariposa, ConfigKind::Bat,    ConfigKind::Nested,
    ConfigKind::Crossing, ConfigKind::Ears,     ConfigKind::Swords, ConfigKind::David,
};

inline constexpr std::uint8_t code(ConfigKind k) noexcept
{
    return static_cast<std::uint8_t>(k);
}

inline constexpr std::string_view mnemonic(ConfigKind k) noexcept
{
    constexpr std::array<std::string_view, config_kind_count> names{
        "taco", "mariposa", "bat", "nested", "crossing", "ears", "swords", "david"};
    return names[code(k)];
}

inline std::optional<ConfigKind> config_kind_from_mnemonic(std::string_view s) noexcept
{
    for (auto k : all_config_kinds)
        if (mnemonic(k) == s)
            return k;
    return std::nullopt;
}

inline ConfigKind config_kind_from_code(std::uint8_t c)
{
    if (c >= config_kind_count)
        throw invalid_input("config kind code out of range: " + std::to_string(c));
    return static_cast<ConfigKind>(c);
}

/// A set of forbidden configurations, one bit per ConfigKind.
class ForbiddenSet {
public:
    constexpr ForbiddenSet() noexcept = default;
    constexpr explicit ForbiddenSet(std::uint8_t mask) noexcept : mask_(mask) {}
    constexpr ForbiddenSet(std::initializer_list<ConfigKind> kinds) noexcept
    {
        for (auto k : kinds)
            mask_ |= bit(k);
    }

    static constexpr ForbiddenSet none() noexcept { return ForbiddenSet{}; }
    static constexpr ForbiddenSet all() noexcept { return ForbiddenSet{std::uint8_t{0xFF}}; }

    constexpr std::uint8_t mask() const noexcept { return mask_; }
    constexpr bool contains(ConfigKind k) const noexcept { return (mask_ & bit(k)) != 0; }
    constexpr bool empty() const noexcept { return mask_ == 0; }
    constexpr int size() const noexcept { return std::popcount(mask_); }

    constexpr ForbiddenSet with(ConfigKind k) const noexcept
    {
        return ForbiddenSet{static_cast<std::uint8_t>(mask_ | bit(k))};
    }
    constexpr ForbiddenSet without(ConfigKind k) const noexcept
    {
        return ForbiddenSet{static_cast<std::uint8_t>(mask_ & ~bit(k))};
    }
    constexpr ForbiddenSet operator|(ForbiddenSet o) const noexcept
    {
        return ForbiddenSet{static_cast<std::uint8_t>(mask_ | o.mask_)};
    }
    constexpr ForbiddenSet operator&(ForbiddenSet o) const noexcept
    {
        return ForbiddenSet{static_cast<std::uint8_t>(mask_ & o.mask_)};
    }
    constexpr bool is_superset_of(ForbiddenSet o) const noexcept { return (mask_ & o.mask_) == o.mask_; }

    constexpr bool operator==(const ForbiddenSet &) const noexcept = default;

    std::vector<ConfigKind> kinds() const
    {
        std::vector<ConfigKind> out;
        for (auto k : all_config_kinds)
            if (contains(k))
                out.push_back(k);
        return out;
    }

    std::vector<std::string> mnemonics() const
    {
        std::vector<std::string> out;
        for (auto k : kinds())
            out.emplace_back(mnemonic(k));
        return out;
    }

    /// Comma-separated mnemonics in code order; "none" for the empty set.
    std::string to_string() const
    {
        if (empty())
            return "none";
        std::string s;
        for (auto k : kinds()) {
            if (!s.empty())
                s += ',';
            s += mnemonic(k);
        }
        return s;
    }

    /// Accepts "taco,nested", "all", "none" (and the empty string).
    /// Whitespace around names is ignored; unknown names throw.
    static ForbiddenSet parse(std::string_view text)
    {
        auto trim = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
                s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
                s.remove_suffix(1);
            return s;
        };
        text = trim(text);
        if (text.empty() || text == "none")
            return none();
        if (text == "all")
            return all();
        ForbiddenSet out;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto comma = text.find(',', pos);
            auto token = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                : comma - pos));
            auto k = config_kind_from_mnemonic(token);
            if (!k)
                throw invalid_input("unknown configuration name '" + std::string(token) + "'");
            out = out.with(*k);
            if (comma == std::string_view::npos)
                break;
            pos = comma + 1;
        }
        return out;
    }

    static ForbiddenSet from_mnemonics(const std::vector<std::string> &names)
    {
        ForbiddenSet out;
        for (const auto &n : names) {
            if (n == "all")
                return all();
            auto k = config_kind_from_mnemonic(n);
            if (!k)
                throw invalid_input("unknown configuration name '" + n + "'");
            out = out.with(*k);
        }
        return out;
    }

private:
    static constexpr std::uint8_t bit(ConfigKind k) noexcept
    {
        return static_cast<std::uint8_t>(1u << code(k));
    }

    std::uint8_t mask_ = 0;
};

} // namespace trifree

#endif
