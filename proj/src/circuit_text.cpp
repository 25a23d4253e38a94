#include <sstream>

#include "qgms/circuit.hpp"
#include "qgms/error.hpp"
#include "qgms/oracle.hpp"

namespace qgms::ir {

namespace {

void write_list(std::ostringstream& out, const std::vector<Qubit>& qs) {
  for (std::size_t i = 0; i < qs.size(); ++i) out << (i ? "," : "") << qs[i];
}

std::vector<Qubit> parse_list(const std::string& s) {
  std::vector<Qubit> out;
  if (s.empty() || s == "-") return out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw InvalidDimensions("circuit text: empty qubit index");
    std::size_t used = 0;
    const unsigned long v = std::stoul(item, &used);
    if (used != item.size()) throw InvalidDimensions("circuit text: bad qubit index '" + item + "'");
    out.push_back(static_cast<Qubit>(v));
  }
  return out;
}

GateKind parse_kind(const std::string& m) {
  for (GateKind k : {GateKind::X, GateKind::H, GateKind::S, GateKind::Sdg, GateKind::T, GateKind::Tdg,
                     GateKind::Z, GateKind::CNOT, GateKind::Toffoli, GateKind::MCX})
    if (mnemonic(k) == m) return k;
  throw InvalidDimensions("circuit text: unknown gate '" + m + "'");
}

}  // namespace

std::string to_text(const Circuit& c) {
  std::ostringstream out;
  out << "QUBITS " << c.qubit_count() << '\n';
  for (const auto& r : c.registers()) {
    out << "REG " << r.name << ' ' << r.start << "..";
    out << (r.size ? r.start + r.size - 1 : r.start) << (r.size ? "" : " empty") << '\n';
  }
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::Oracle)
      out << "ORACLE:" << g.oracle_name;
    else
      out << mnemonic(g.kind);
    out << ' ';
    write_list(out, g.targets);
    out << " ; ";
    if (g.controls.empty()) out << '-';
    write_list(out, g.controls);
    out << '\n';
  }
  return out.str();
}

Circuit from_text(std::string_view text,
                  const std::map<std::string, std::shared_ptr<const sim::OracleSpec>>& oracles) {
  std::istringstream in{std::string(text)};
  std::string line;
  unsigned qubits = 0;
  bool have_qubits = false;
  std::vector<Register> regs;
  std::vector<Gate> gates;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "QUBITS") {
      ls >> qubits;
      have_qubits = true;
    } else if (head == "REG") {
      std::string name, range, flag;
      ls >> name >> range >> flag;
      const auto dots = range.find("..");
      if (dots == std::string::npos) throw InvalidDimensions("circuit text: bad register range");
      const auto a = static_cast<Qubit>(std::stoul(range.substr(0, dots)));
      const auto b = static_cast<Qubit>(std::stoul(range.substr(dots + 2)));
      regs.push_back(Register{name, a, flag == "empty" ? 0 : b - a + 1});
    } else {
      std::string targets, sep, controls;
      ls >> targets >> sep >> controls;
      if (sep != ";") throw InvalidDimensions("circuit text: expected ';' in '" + line + "'");
      Gate g;
      g.targets = parse_list(targets);
      g.controls = parse_list(controls);
      if (head.rfind("ORACLE:", 0) == 0) {
        g.kind = GateKind::Oracle;
        g.oracle_name = head.substr(7);
        if (auto it = oracles.find(g.oracle_name); it != oracles.end()) g.oracle = it->second;
      } else {
        g.kind = parse_kind(head);
      }
      gates.push_back(std::move(g));
    }
  }
  if (!have_qubits) throw InvalidDimensions("circuit text: missing QUBITS header");
  Circuit c(qubits, std::move(regs));
  for (auto& g : gates) c.add(std::move(g));
  return c;
}

}  // namespace qgms::ir
