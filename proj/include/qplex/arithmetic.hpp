#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qplex/circuit.hpp"

// Reversible arithmetic fragments. Multi-bit registers are passed least
// significant bit first unless a parameter says otherwise; the comparator
// takes most significant bit first because it scans high bits first.

namespace qplex {

namespace detail {

inline void require_distinct(std::vector<int> wires, const char* what) {
    std::sort(wires.begin(), wires.end());
    for (std::size_t i = 1; i < wires.size(); ++i)
        if (wires[i] == wires[i - 1]) throw std::invalid_argument(std::string(what) + ": wires must be distinct");
}

}  // namespace detail

struct AdderBits {
    int sum = 0;    // wire holding x ^ y ^ cin afterwards (the cin wire)
    int carry = 0;  // wire holding the majority carry (anc[1])
};

// One-bit full adder, five gates on five wires. Afterwards the x wire is
// unchanged, the y wire holds x^y, anc[0] holds x&y, the cin wire holds the
// sum and anc[1] the carry-out. Intermediates are cleared by running the
// enclosing circuit's uncompute, not locally.
inline AdderBits build_full_adder(ReversibleCircuit& c, int x, int y, int cin,
                                  std::array<int, 2> anc) {
    detail::require_distinct({x, y, cin, anc[0], anc[1]}, "full adder");
    add_gate(c, anc[0], {on(x), on(y)});
    add_gate(c, y, {on(x)});
    add_gate(c, anc[1], {on(y), on(cin)});
    add_gate(c, cin, {on(y)});
    add_gate(c, anc[1], {on(anc[0])});
    return {cin, anc[1]};
}

struct RippleResult {
    std::vector<int> sum;  // LSB first; (x + y) mod 2^w
    int carry = 0;         // carry out of the top bit
};

// Chains full adders, one per bit position, threading each carry into the
// next stage's carry-in. Sum bit i lands on stage i's carry-in wire. The x
// register is preserved; y bits end as x^y per stage.
inline RippleResult build_ripple_adder(ReversibleCircuit& c, std::span<const int> x,
                                       std::span<const int> y, const std::string& tag) {
    if (x.size() != y.size()) throw std::invalid_argument("ripple adder: width mismatch");
    if (x.empty()) throw std::invalid_argument("ripple adder: empty operands");
    RippleResult out;
    int cin = add_register(c, tag + ".cin", 1)[0];
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto anc = add_register(c, tag + ".fa" + std::to_string(i), 2);
        AdderBits bits = build_full_adder(c, x[i], y[i], cin, {anc[0], anc[1]});
        out.sum.push_back(bits.sum);
        cin = bits.carry;
    }
    out.carry = cin;
    return out;
}

// counter += 1 (mod 2^w) whenever every control fires. The ladder flips the
// counter MSB first: bit j toggles when the controls fire and all lower
// bits are 1. Control wires are read only.
inline void build_controlled_increment(ReversibleCircuit& c, std::span<const int> counter,
                                       std::vector<Control> controls) {
    for (int j = static_cast<int>(counter.size()) - 1; j >= 0; --j) {
        std::vector<Control> ctl = controls;
        for (int b = 0; b < j; ++b) ctl.push_back(on(counter[b]));
        add_gate(c, counter[j], std::move(ctl));
    }
}

// counter += number of set input wires; inputs are read only. One
// controlled increment per input.
inline void build_popcount(ReversibleCircuit& c, std::span<const int> inputs,
                           std::span<const int> counter) {
    for (int e : inputs) build_controlled_increment(c, counter, {on(e)});
}

// flag ^= [value(a) <= value(b)], both registers most significant bit
// first, equal widths. Scratch: per position a "less-than" bit, plus one
// disjunct bit per position and one for all-equal. The b register holds the
// per-position equality bits transiently and is restored before the flag is
// written; disjunct scratch stays dirty until the enclosing uncompute.
inline void build_leq_comparator(ReversibleCircuit& c, std::span<const int> a,
                                 std::span<const int> b, int flag, const std::string& tag) {
    if (a.size() != b.size()) throw std::invalid_argument("comparator: width mismatch");
    const int s = static_cast<int>(a.size());
    if (s == 0) {  // empty registers compare equal
        add_gate(c, flag, {});
        return;
    }
    auto lt = add_register(c, tag + ".lt", s);
    auto d = add_register(c, tag + ".d", s + 1);

    // a[i] < b[i] on fresh wires
    for (int i = 0; i < s; ++i) add_gate(c, lt[i], {off(a[i]), on(b[i])});
    // b[i] <- [a[i] == b[i]]
    for (int i = 0; i < s; ++i) add_gate(c, b[i], {off(a[i])});
    // disjuncts: strictly less at position i with equality above it,
    // and one all-equal term
    add_gate(c, d[0], {on(lt[0])});
    for (int i = 1; i < s; ++i) {
        std::vector<Control> ctl;
        for (int j = 0; j < i; ++j) ctl.push_back(on(b[j]));
        ctl.push_back(on(lt[i]));
        add_gate(c, d[i], std::move(ctl));
    }
    {
        std::vector<Control> ctl;
        for (int j = 0; j < s; ++j) ctl.push_back(on(b[j]));
        add_gate(c, d[s], std::move(ctl));
    }
    // restore b before anything downstream reads it
    for (int i = 0; i < s; ++i) add_gate(c, b[i], {off(a[i])});
    // the disjuncts are mutually exclusive, so xor-chaining them onto the
    // flag realizes their disjunction
    for (int i = 1; i <= s; ++i) add_gate(c, d[i], {on(d[i - 1])});
    add_gate(c, flag, {on(d[s])});
}

// X gates writing `value` into a zeroed register, LSB first. Loading zero
// emits nothing.
inline void build_load_constant(ReversibleCircuit& c, std::span<const int> reg, std::uint64_t value) {
    if (reg.size() < 64 && (value >> reg.size()) != 0)
        throw std::invalid_argument("constant does not fit the register");
    for (std::size_t i = 0; i < reg.size(); ++i)
        if ((value >> i) & 1u) add_gate(c, reg[i], {});
}

// Read a register (LSB first) out of a basis state.
inline std::uint64_t read_register(const BasisState& s, std::span<const int> reg) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < reg.size(); ++i)
        if (s.get(reg[i])) v |= std::uint64_t{1} << i;
    return v;
}

}
