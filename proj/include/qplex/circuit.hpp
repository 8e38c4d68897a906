#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qplex/errors.hpp"

namespace qplex {

// Wires are plain indices into a circuit's wire array; the register table
// attaches names. Control polarity: positive fires on |1>, negative on |0>.
struct Control {
    int wire = 0;
    bool positive = true;
};

inline Control on(int wire) { return {wire, true}; }
inline Control off(int wire) { return {wire, false}; }

// Multi-controlled NOT, the only gate kind used here. Zero controls is a
// plain NOT. Every gate is its own inverse.
struct Gate {
    int target = 0;
    std::vector<Control> controls;
};

struct Register {
    std::string name;
    std::vector<int> wires;
};

// Classical basis state of `width` wires, packed 64 per word.
struct BasisState {
    int width = 0;
    std::vector<std::uint64_t> words;

    explicit BasisState(int w = 0) : width(w), words((w + 63) / 64, 0) {}

    bool get(int wire) const { return (words[wire >> 6] >> (wire & 63)) & 1u; }
    void set(int wire, bool v) {
        std::uint64_t bit = std::uint64_t{1} << (wire & 63);
        if (v) words[wire >> 6] |= bit; else words[wire >> 6] &= ~bit;
    }
    void flip(int wire) { words[wire >> 6] ^= std::uint64_t{1} << (wire & 63); }
    bool operator==(const BasisState&) const = default;
};

// Gate list over a fixed set of wires. Wires are allocated by registers,
// in order, and never reused; the ancilla manifest lists every wire that a
// compute/uncompute pair must return to zero.
struct ReversibleCircuit {
    int width = 0;
    std::vector<Gate> gates;
    std::vector<Register> registers;
    std::vector<int> ancilla_manifest;
};

inline std::vector<int> add_register(ReversibleCircuit& c, const std::string& name, int width) {
    Register r{name, {}};
    for (int i = 0; i < width; ++i) r.wires.push_back(c.width + i);
    c.width += width;
    c.registers.push_back(r);
    return c.registers.back().wires;
}

inline void add_gate(ReversibleCircuit& c, int target, std::vector<Control> controls) {
    if (target < 0 || target >= c.width) throw std::invalid_argument("gate target out of range");
    for (std::size_t i = 0; i < controls.size(); ++i) {
        if (controls[i].wire < 0 || controls[i].wire >= c.width)
            throw std::invalid_argument("gate control out of range");
        if (controls[i].wire == target) throw std::invalid_argument("control on target wire");
        for (std::size_t j = i + 1; j < controls.size(); ++j)
            if (controls[i].wire == controls[j].wire)
                throw std::invalid_argument("duplicate control wire");
    }
    c.gates.push_back(Gate{target, std::move(controls)});
}

inline void apply_gate(BasisState& s, const Gate& g) {
    for (const auto& c : g.controls)
        if (s.get(c.wire) != c.positive) return;
    s.flip(g.target);
}

inline BasisState run(const ReversibleCircuit& c, BasisState input) {
    for (const auto& g : c.gates) apply_gate(input, g);
    return input;
}

// Reversed gate sequence; with self-inverse gates that is the inverse circuit.
inline ReversibleCircuit inverse(const ReversibleCircuit& c) {
    ReversibleCircuit inv = c;
    for (std::size_t i = 0, j = c.gates.size(); i + 1 <= j; ++i)
        inv.gates[i] = c.gates[j - 1 - i];
    return inv;
}

// Text form: register layout header, then one gate per line,
// "MCX <target> +a -b ..." with +/- for control polarity.
inline std::string dump(const ReversibleCircuit& c) {
    std::string out = "# wires " + std::to_string(c.width) + "\n";
    for (const auto& r : c.registers) {
        out += "# register " + r.name;
        for (int w : r.wires) out += " " + std::to_string(w);
        out += "\n";
    }
    for (const auto& g : c.gates) {
        out += "MCX " + std::to_string(g.target);
        for (const auto& ctl : g.controls)
            out += std::string(" ") + (ctl.positive ? "+" : "-") + std::to_string(ctl.wire);
        out += "\n";
    }
    return out;
}

}
