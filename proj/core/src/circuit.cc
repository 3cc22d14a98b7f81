// Copyright 2026 The romit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "romit/circuit.h"

#include <map>

#include "romit/errors.h"

namespace romit {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

uint64_t gather(uint64_t reg, std::span<const unsigned> slots) {
    uint64_t out = 0;
    for (std::size_t i = 0; i < slots.size(); i++) {
        out |= ((reg >> slots[i]) & 1) << i;
    }
    return out;
}

uint64_t write_slots(uint64_t reg, std::span<const unsigned> slots, uint64_t value) {
    for (std::size_t i = 0; i < slots.size(); i++) {
        const uint64_t bit = uint64_t{1} << slots[i];
        reg = ((value >> i) & 1) ? (reg | bit) : (reg & ~bit);
    }
    return reg;
}

void debug_check(const QuantumState &state) {
#ifndef NDEBUG
    state.check_invariants(1e-9);
#else
    (void)state;
#endif
}

// Walks the circuit depth first. Sampling mode splits integer shot counts
// over branches; exact mode splits probability weight.
class Executor {
   public:
    Executor(const Circuit &circuit, Rng *rng, double min_weight)
        : c_(circuit), rng_(rng), min_weight_(min_weight) {
    }

    void run_shots(uint64_t shots) {
        QuantumState state(c_.num_qubits());
        step(0, std::move(state), 0, static_cast<double>(shots));
    }

    std::map<uint64_t, double> &outputs() {
        return outputs_;
    }
    std::map<uint64_t, double> &registers() {
        return registers_;
    }

   private:
    bool sampling() const {
        return rng_ != nullptr;
    }

    // Splits `amount` over categories: multinomial counts when sampling,
    // proportional weights when exact.
    std::vector<double> split(double amount, std::span<const double> probs) {
        std::vector<double> out(probs.size(), 0.0);
        if (sampling()) {
            auto counts = sample_multinomial(static_cast<uint64_t>(amount), probs, *rng_);
            for (std::size_t i = 0; i < out.size(); i++) {
                out[i] = static_cast<double>(counts[i]);
            }
        } else {
            double total = 0;
            for (double p : probs) {
                total += std::max(0.0, p);
            }
            for (std::size_t i = 0; i < out.size(); i++) {
                out[i] = amount * std::max(0.0, probs[i]) / total;
            }
        }
        return out;
    }

    bool populated(double amount) const {
        return sampling() ? amount >= 1.0 : amount > min_weight_;
    }

    void record(uint64_t reg, double amount) {
        outputs_[gather(reg, c_.output_slots())] += amount;
        registers_[reg] += amount;
    }

    void step(std::size_t index, QuantumState state, uint64_t reg, double amount) {
        const auto nodes = c_.nodes();
        for (; index < nodes.size(); index++) {
            const CircuitNode &node = nodes[index];
            const bool last = index + 1 == nodes.size();
            bool branched = false;
            std::visit(
                Overloaded{
                    [&](const GateOp &g) {
                        if (!g.condition || g.condition->holds(reg)) {
                            state.apply_unitary(g.matrix, g.targets);
                        }
                    },
                    [&](const ChannelOp &ch) { apply_channel_inplace(state, ch.channel, ch.targets); },
                    [&](const ResetOp &r) { state.reset(r.targets); },
                    [&](const MeasureOp &m) {
                        branched = true;
                        measure(index, m, std::move(state), reg, amount, last);
                    },
                    [&](const TwirlOp &t) {
                        branched = true;
                        twirl(index, t, 0, std::move(state), reg, amount);
                    },
                },
                node);
            if (branched) {
                return;
            }
            debug_check(state);
        }
        record(reg, amount);
    }

    void measure(std::size_t index, const MeasureOp &m, QuantumState state, uint64_t reg, double amount, bool last) {
        apply_channel_inplace(state, m.model.pre_channel(), m.targets);
        const auto probs = state.outcome_probabilities(m.targets);
        const auto shares = split(amount, probs);
        std::size_t last_populated = shares.size();
        for (std::size_t o = 0; o < shares.size(); o++) {
            if (populated(shares[o])) {
                last_populated = o;
            }
        }
        for (std::size_t o = 0; o < shares.size(); o++) {
            if (!populated(shares[o])) {
                continue;
            }
            const uint64_t next_reg = write_slots(reg, m.slots, o);
            if (last) {
                record(next_reg, shares[o]);
                continue;
            }
            QuantumState branch = (o == last_populated) ? std::move(state) : state;
            branch.project(m.targets, o);
            debug_check(branch);
            step(index + 1, std::move(branch), next_reg, shares[o]);
        }
    }

    void twirl(std::size_t index, const TwirlOp &t, std::size_t k, QuantumState state, uint64_t reg, double amount) {
        if (k == t.targets.size()) {
            step(index + 1, std::move(state), reg, amount);
            return;
        }
        static constexpr double kQuarter[] = {0.25, 0.25, 0.25, 0.25};
        const auto shares = split(amount, kQuarter);
        for (int p = 0; p < 4; p++) {
            if (!populated(shares[p])) {
                continue;
            }
            QuantumState branch = state;
            const auto pauli = static_cast<Pauli>(p);
            if (pauli != Pauli::I) {
                const unsigned target[] = {t.targets[k]};
                branch.apply_unitary(gates::pauli(pauli), target);
            }
            const bool flips = pauli == Pauli::X || pauli == Pauli::Y;
            const uint64_t bit = uint64_t{1} << t.slots[k];
            const uint64_t next_reg = flips ? (reg | bit) : (reg & ~bit);
            twirl(index, t, k + 1, std::move(branch), next_reg, shares[p]);
        }
    }

    const Circuit &c_;
    Rng *rng_;
    double min_weight_;
    std::map<uint64_t, double> outputs_;
    std::map<uint64_t, double> registers_;
};

void check_targets(std::span<const unsigned> targets, unsigned n, const std::string &where) {
    if (targets.empty()) {
        throw ValidationError(where + ": no targets");
    }
    uint64_t seen = 0;
    for (unsigned t : targets) {
        if (t >= n) {
            throw ValidationError(where + ": target " + std::to_string(t) + " is outside the " + std::to_string(n) +
                                  "-qubit register");
        }
        if ((seen >> t) & 1) {
            throw ValidationError(where + ": target " + std::to_string(t) + " repeated");
        }
        seen |= uint64_t{1} << t;
    }
}

}  // namespace

Circuit::Circuit(unsigned num_qubits, unsigned num_clbits) : n_(num_qubits), clbits_(num_clbits) {
    if (num_qubits < 1 || num_qubits > kMaxSimQubits) {
        throw ValidationError("circuits support 1 to 10 qubits, got " + std::to_string(num_qubits));
    }
    if (num_clbits > kMaxWidth) {
        throw ValidationError("classical register is limited to 63 bits");
    }
    for (unsigned s = 0; s < num_clbits; s++) {
        output_.push_back(s);
    }
}

Circuit &Circuit::gate(std::string_view name, std::vector<unsigned> targets, std::vector<double> params) {
    return gate(std::string(name), gates::by_name(name, params), std::move(targets));
}

Circuit &Circuit::gate(std::string name, CMatrix matrix, std::vector<unsigned> targets) {
    nodes_.emplace_back(GateOp{std::move(name), std::move(matrix), std::move(targets), std::nullopt});
    return *this;
}

Circuit &Circuit::conditional_gate(std::string_view name, std::vector<unsigned> targets, Condition condition) {
    nodes_.emplace_back(GateOp{std::string(name), gates::by_name(name, {}), std::move(targets), std::move(condition)});
    return *this;
}

Circuit &Circuit::channel(NoiseChannel channel, std::vector<unsigned> targets) {
    nodes_.emplace_back(ChannelOp{std::move(channel), std::move(targets)});
    return *this;
}

Circuit &Circuit::measure(std::vector<unsigned> targets, std::vector<unsigned> slots, MeasurementModel model) {
    nodes_.emplace_back(MeasureOp{std::move(targets), std::move(slots), std::move(model)});
    return *this;
}

Circuit &Circuit::measure(std::vector<unsigned> targets, std::vector<unsigned> slots) {
    const auto arity = static_cast<unsigned>(targets.size());
    return measure(std::move(targets), std::move(slots), MeasurementModel::ideal(arity == 0 ? 1 : arity));
}

Circuit &Circuit::reset(std::vector<unsigned> targets) {
    nodes_.emplace_back(ResetOp{std::move(targets)});
    return *this;
}

Circuit &Circuit::twirl(std::vector<unsigned> targets, std::vector<unsigned> slots) {
    nodes_.emplace_back(TwirlOp{std::move(targets), std::move(slots)});
    return *this;
}

Circuit &Circuit::append(CircuitNode node) {
    nodes_.push_back(std::move(node));
    return *this;
}

Circuit &Circuit::set_output(std::vector<unsigned> slots) {
    output_ = std::move(slots);
    return *this;
}

void Circuit::validate() const {
    uint64_t written = 0;
    auto write = [&](std::span<const unsigned> slots, const std::string &where) {
        for (unsigned s : slots) {
            if (s >= clbits_) {
                throw ValidationError(where + ": slot " + std::to_string(s) + " is outside the " +
                                      std::to_string(clbits_) + "-bit register");
            }
            if ((written >> s) & 1) {
                throw ValidationError(where + ": slot " + std::to_string(s) + " is written more than once");
            }
            written |= uint64_t{1} << s;
        }
    };
    for (std::size_t i = 0; i < nodes_.size(); i++) {
        const std::string where = "node " + std::to_string(i);
        std::visit(
            Overloaded{
                [&](const GateOp &g) {
                    check_targets(g.targets, n_, where);
                    if (g.targets.size() > 2 || g.matrix.rows() != (Eigen::Index{1} << g.targets.size()) ||
                        !is_unitary(g.matrix)) {
                        throw ValidationError(where + ": gate '" + g.name + "' is not a unitary on its targets");
                    }
                    if (g.condition) {
                        for (unsigned s : g.condition->slots) {
                            if (s >= clbits_ || !((written >> s) & 1)) {
                                throw ValidationError(where + ": condition reads slot " + std::to_string(s) +
                                                      " before any node writes it");
                            }
                        }
                    }
                },
                [&](const ChannelOp &ch) {
                    check_targets(ch.targets, n_, where);
                    if (ch.targets.size() != ch.channel.arity()) {
                        throw ValidationError(where + ": channel arity does not match its targets");
                    }
                },
                [&](const MeasureOp &m) {
                    check_targets(m.targets, n_, where);
                    if (m.slots.size() != m.targets.size()) {
                        throw ValidationError(where + ": measurement needs one slot per target");
                    }
                    if (m.model.arity() != m.targets.size()) {
                        throw ValidationError(where + ": measurement model arity does not match its targets");
                    }
                    write(m.slots, where);
                },
                [&](const ResetOp &r) { check_targets(r.targets, n_, where); },
                [&](const TwirlOp &t) {
                    check_targets(t.targets, n_, where);
                    if (t.slots.size() != t.targets.size()) {
                        throw ValidationError(where + ": twirl needs one slot per target");
                    }
                    write(t.slots, where);
                },
            },
            nodes_[i]);
    }
    if (output_.empty()) {
        throw ValidationError("circuit declares no output slots");
    }
    uint64_t seen = 0;
    for (unsigned s : output_) {
        if (s >= clbits_ || !((written >> s) & 1)) {
            throw ValidationError("output slot " + std::to_string(s) + " is never written");
        }
        if ((seen >> s) & 1) {
            throw ValidationError("output slot " + std::to_string(s) + " listed twice");
        }
        seen |= uint64_t{1} << s;
    }
}

Circuit with_terminal_measurement(const Circuit &prep, const MeasurementModel &model) {
    const unsigned n = prep.num_qubits();
    Circuit out(n, std::max(n, prep.num_clbits()));
    for (const auto &node : prep.nodes()) {
        out.append(node);
    }
    std::vector<unsigned> all(n);
    for (unsigned q = 0; q < n; q++) {
        all[q] = q;
    }
    out.measure(all, all, model);
    out.set_output(all);
    return out;
}

RunResult run_circuit(const Circuit &circuit, uint64_t shots, Rng &rng) {
    circuit.validate();
    RunResult result;
    result.shots = shots;
    if (shots == 0) {
        return result;
    }
    Executor exec(circuit, &rng, 0.0);
    exec.run_shots(shots);
    for (const auto &[k, v] : exec.outputs()) {
        result.counts[k] = static_cast<uint64_t>(v);
    }
    for (const auto &[k, v] : exec.registers()) {
        result.register_counts[k] = static_cast<uint64_t>(v);
    }
    return result;
}

RunResult run_circuit(const Circuit &circuit, uint64_t shots, uint64_t seed) {
    Rng rng = make_rng(seed);
    return run_circuit(circuit, shots, rng);
}

SignedDist output_distribution(const Circuit &circuit, double min_branch_probability) {
    circuit.validate();
    Executor exec(circuit, nullptr, min_branch_probability);
    exec.run_shots(1);
    std::vector<SignedDist::Entry> entries;
    for (const auto &[k, v] : exec.outputs()) {
        entries.push_back({k, v});
    }
    return SignedDist(static_cast<unsigned>(circuit.output_slots().size()), std::move(entries));
}

}  // namespace romit
