// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file symbol.hpp
/// @brief Interned symbolic indeterminates and the global symbol registry.
///
/// A Symbol is a lightweight handle (an index into a process-wide registry)
/// carrying a unique name and a semantic kind. All canonical orderings in
/// the library compare symbols by *name*, never by registration order, so
/// canonical forms are independent of the order in which code paths first
/// touch a symbol.

#ifndef COVWAVE_SYMBOL_HPP
#define COVWAVE_SYMBOL_HPP

#include "covwave/numeric.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace covwave {

/// Semantic role of a symbol; informs display and sanity checks only,
/// canonical algebra treats every symbol as a plain indeterminate.
enum class SymbolKind {
    parameter,     ///< generic constant (coupling, coefficient, exponent, ...)
    coordinate,    ///< spacetime coordinate
    mass_like,     ///< enters dispersion relations as an inertia scale
    velocity_like, ///< boost or propagation speed
};

/// Interned indeterminate. Copyable, cheap, equality by identity.
class Symbol {
  public:
    /// Sentinel handle; using it (other than comparing/validity) is an error.
    Symbol() = default;

    bool valid() const { return id_ != invalid_id; }
    std::uint32_t id() const { return id_; }

    const std::string& name() const { return entry().name; }
    SymbolKind kind() const { return entry().kind; }

    friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }

    /// Returns the symbol with this name, creating it when absent. A second
    /// intern with a conflicting kind throws: names are globally unique.
    static Symbol intern(std::string_view name, SymbolKind kind = SymbolKind::parameter) {
        Registry& reg = registry();
        std::lock_guard<std::mutex> lock(reg.mutex);
        auto it = reg.index.find(name);
        if (it != reg.index.end()) {
            if (reg.entries[it->second].kind != kind)
                throw DomainError("symbol '" + std::string(name) + "' re-interned with a different kind");
            return Symbol(it->second);
        }
        COVWAVE_REQUIRE(!name.empty(), "symbol names must be nonempty");
        auto id = static_cast<std::uint32_t>(reg.entries.size());
        reg.entries.push_back(Entry{std::string(name), kind});
        reg.index.emplace(reg.entries.back().name, id);
        return Symbol(id);
    }

    /// Looks up an existing symbol without creating one.
    static std::optional<Symbol> lookup(std::string_view name) {
        Registry& reg = registry();
        std::lock_guard<std::mutex> lock(reg.mutex);
        auto it = reg.index.find(name);
        if (it == reg.index.end()) return std::nullopt;
        return Symbol(it->second);
    }

  private:
    static constexpr std::uint32_t invalid_id = 0xffffffffu;

    struct Entry {
        std::string name;
        SymbolKind kind;
    };
    struct Registry {
        Registry() { preload(*this); }
        std::mutex mutex;
        std::deque<Entry> entries; ///< deque: entry addresses stay stable
        std::map<std::string, std::uint32_t, std::less<>> index;
    };

    explicit Symbol(std::uint32_t id) : id_(id) {}

    const Entry& entry() const {
        COVWAVE_REQUIRE(valid(), "use of an invalid Symbol handle");
        return registry().entries[id_];
    }

    static Registry& registry() {
        static Registry reg;
        return reg;
    }

    /// Registers the standard vocabulary up front so every run sees the
    /// same handles for the symbols the pipelines use.
    static void preload(Registry& reg) {
        auto add = [&reg](const char* name, SymbolKind kind) {
            auto id = static_cast<std::uint32_t>(reg.entries.size());
            reg.entries.push_back(Entry{name, kind});
            reg.index.emplace(reg.entries.back().name, id);
        };
        add("m", SymbolKind::mass_like);
        add("hbar", SymbolKind::parameter);
        add("c", SymbolKind::velocity_like);
        add("v", SymbolKind::velocity_like);
        add("V", SymbolKind::parameter);
        add("D", SymbolKind::parameter);
        add("beta", SymbolKind::velocity_like);
        add("gamma", SymbolKind::parameter);
        add("k", SymbolKind::parameter);
        add("w", SymbolKind::parameter);
        add("f", SymbolKind::parameter);
        add("Psi0", SymbolKind::parameter);
        add("g0", SymbolKind::parameter);
        for (const char* x : {"x0", "x1", "x2", "x3"}) add(x, SymbolKind::coordinate);
        for (const char* l : {"lam0", "lam1", "lam2", "lam3"}) add(l, SymbolKind::parameter);
        for (const char* s : {"Abar", "Bbar", "Cbar", "A", "B", "C", "Atil", "Btil", "Ctil",
                              "atil", "bbar", "btil"})
            add(s, SymbolKind::parameter);
    }

    std::uint32_t id_ = invalid_id;
};

/// Three-way name comparison used by every canonical order in the library.
inline int compare_name(Symbol a, Symbol b) {
    if (a == b) return 0;
    return a.name().compare(b.name());
}

/// Strict weak order on symbols by name (for std::map keys etc.).
struct SymbolNameLess {
    bool operator()(Symbol a, Symbol b) const { return compare_name(a, b) < 0; }
};

/// Convenience accessors for the pre-registered vocabulary.
namespace sym {
inline Symbol by_name(std::string_view n) {
    auto s = Symbol::lookup(n);
    COVWAVE_REQUIRE(s.has_value(), "standard symbol missing from registry");
    return *s;
}
inline Symbol m() { return by_name("m"); }
inline Symbol hbar() { return by_name("hbar"); }
inline Symbol c() { return by_name("c"); }
inline Symbol v() { return by_name("v"); }
inline Symbol V() { return by_name("V"); }
inline Symbol D() { return by_name("D"); }
inline Symbol beta() { return by_name("beta"); }
inline Symbol gamma() { return by_name("gamma"); }
inline Symbol k() { return by_name("k"); }
inline Symbol w() { return by_name("w"); }
inline Symbol f() { return by_name("f"); }
inline Symbol Psi0() { return by_name("Psi0"); }
inline Symbol g0() { return by_name("g0"); }
inline Symbol x(int mu) {
    COVWAVE_REQUIRE(mu >= 0 && mu <= 3, "coordinate index out of range");
    return by_name(std::string("x") + char('0' + mu));
}
inline Symbol lam(int mu) {
    COVWAVE_REQUIRE(mu >= 0 && mu <= 3, "multiplier index out of range");
    return by_name(std::string("lam") + char('0' + mu));
}
} // namespace sym

} // namespace covwave

#endif // COVWAVE_SYMBOL_HPP
