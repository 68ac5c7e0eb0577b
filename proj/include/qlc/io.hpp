#pragma once

#include <algorithm>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlc/construct.hpp"
#include "qlc/covering.hpp"
#include "qlc/errors.hpp"
#include "qlc/matrix.hpp"
#include "qlc/protocol.hpp"
#include "qlc/sign_vector.hpp"
#include "qlc/verify.hpp"

namespace qlc {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw FormatError("failed writing '" + path + "'");
}

// ---------------------------------------------------------------------------
// Code files: one sign vector string per line. Design files: one block per
// line, space-separated 0-based indices.

inline CoveringCode parse_code_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<SignVector> words;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    words.push_back(SignVector::parse(line));
  }
  if (words.empty()) throw FormatError("code file has no codewords");
  for (const auto& w : words)
    if (w.length() != words.front().length())
      throw FormatError("codewords in a code file must share one length");
  return CoveringCode(std::move(words));
}

inline std::string format_code_text(const CoveringCode& code) {
  std::string out;
  for (const auto& c : code.codewords()) out += c.to_string() + '\n';
  return out;
}

inline std::string format_design_text(const CoveringDesign& design) {
  std::string out;
  for (const auto& block : design.blocks) {
    for (std::size_t i = 0; i < block.size(); ++i)
      out += (i ? " " : "") + std::to_string(block[i]);
    out += '\n';
  }
  return out;
}

inline std::vector<std::vector<int>> parse_design_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<int>> blocks;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<int> block;
    int v = 0;
    while (fields >> v) block.push_back(v);
    if (!fields.eof()) throw FormatError("bad design line: " + line);
    if (!block.empty()) blocks.push_back(std::move(block));
  }
  return blocks;
}

// ---------------------------------------------------------------------------
// Protocol JSON:
//   {k, n, ell, encoder: [[...], ...],
//    decoder: [{w: "+-...", support: [...], coeffs: [...]}, ...],   (k <= 20)
//    blocks: {k0, n0, ell0, m, kept, decoder: [...]}}               (block protocols)

namespace detail {

inline json combination_json(const SignVector& w, const SparseCombination& a) {
  return {{"w", w.to_string()}, {"support", a.support()}, {"coeffs", a.coefficients()}};
}

inline std::vector<SparseCombination> parse_decoder_table(const json& entries, int k) {
  if (!entries.is_array()) throw FormatError("decoder must be an array");
  check_enumeration_budget(k, kMaxEnumerationLength);
  const std::size_t total = std::size_t{1} << k;
  std::vector<std::optional<SparseCombination>> slots(total);
  for (const auto& entry : entries) {
    const SignVector w = SignVector::parse(entry.at("w").get<std::string>());
    if (w.length() != k) throw FormatError("decoder entry w has the wrong length");
    if (slots[w.bits()]) throw FormatError("duplicate decoder entry for " + w.to_string());
    slots[w.bits()] = SparseCombination(entry.at("support").get<std::vector<int>>(),
                                        entry.at("coeffs").get<std::vector<double>>());
  }
  std::vector<SparseCombination> table;
  for (std::size_t bits = 0; bits < total; ++bits) {
    if (!slots[bits])
      throw FormatError("decoder has no entry for " + SignVector(k, bits).to_string());
    table.push_back(std::move(*slots[bits]));
  }
  return table;
}

}  // namespace detail

inline json protocol_to_json(const Protocol& p) {
  json out;
  out["k"] = p.k();
  out["n"] = p.n();
  out["ell"] = p.ell();
  json rows = json::array();
  for (int i = 0; i < p.k(); ++i) rows.push_back(p.encoder().row(i));
  out["encoder"] = std::move(rows);
  if (p.k() <= kMaxVerifyLength) {
    json table = json::array();
    for (const SignVector& w : SignVectorRange(p.k()))
      table.push_back(detail::combination_json(w, p.decode(w)));
    out["decoder"] = std::move(table);
  }
  if (const auto& layout = p.layout()) {
    const BlockSpec& spec = *layout->spec;
    json table = json::array();
    for (const SignVector& w : SignVectorRange(spec.k0))
      table.push_back(detail::combination_json(w, spec.decode(w)));
    out["blocks"] = {{"k0", spec.k0},       {"n0", spec.n0},       {"ell0", spec.ell0},
                     {"m", layout->blocks}, {"kept", layout->kept}, {"decoder", table}};
  }
  return out;
}

// Rebuilds a protocol. A stored decoder table is authoritative; the block
// description is kept as the layout only when the table agrees with it.
// With neither, a minimal-support decoder is searched for.
inline Protocol protocol_from_json(const json& j) {
  try {
    const int k = j.at("k").get<int>();
    const int n = j.at("n").get<int>();
    const int ell = j.at("ell").get<int>();
    const auto rows = j.at("encoder").get<std::vector<std::vector<double>>>();
    Matrix encoder = Matrix::from_rows(rows);
    if (encoder.rows() != k || encoder.cols() != n)
      throw FormatError("encoder shape does not match k x n");
    std::optional<Protocol> blocked;
    if (j.contains("blocks")) {
      const json& b = j.at("blocks");
      const int k0 = b.at("k0").get<int>(), n0 = b.at("n0").get<int>();
      if (k0 < 1 || n0 < 1 || k0 > k || n0 > n)
        throw FormatError("block shape does not fit the encoder");
      std::vector<double> block_entries;
      for (int r = 0; r < k0; ++r)
        for (int c = 0; c < n0; ++c) block_entries.push_back(encoder(r, c));
      auto spec = std::make_shared<const BlockSpec>(
          b.at("ell0").get<int>(), Matrix(k0, n0, std::move(block_entries)),
          detail::parse_decoder_table(b.at("decoder"), k0));
      Protocol p = Protocol::from_blocks(spec, b.at("m").get<int>(), b.at("kept").get<int>());
      if (!(p.encoder() == encoder))
        throw FormatError("encoder does not match the block description");
      blocked = p.with_ell(ell);
    }
    if (j.contains("decoder")) {
      auto table = detail::parse_decoder_table(j.at("decoder"), k);
      if (blocked && std::all_of(table.begin(), table.end(), [&](const SparseCombination& a) {
            const auto i = static_cast<std::uint64_t>(&a - table.data());
            return a == blocked->decode(SignVector(k, i));
          }))
        return *blocked;
      return Protocol::from_table(std::move(encoder), ell, std::move(table));
    }
    if (blocked) return *blocked;
    auto search = detail::search_decoder_table(encoder, ell);
    if (search.witness)
      throw FormatError("no decoder stored and " + search.witness->to_string() +
                        " is not spanned by any ell columns");
    return Protocol::from_table(std::move(encoder), ell, std::move(search.table));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed protocol JSON: ") + e.what());
  } catch (const ContractError& e) {
    throw FormatError(std::string("invalid protocol: ") + e.what());
  }
}

inline std::string protocol_to_string(const Protocol& p) {
  return protocol_to_json(p).dump(1) + "\n";
}

inline Protocol protocol_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed protocol JSON: ") + e.what());
  }
  return protocol_from_json(j);
}

inline json report_to_json(const VerificationReport& r) {
  json out{{"ok", r.ok},
           {"checked", r.checked},
           {"max_access", r.max_access},
           {"max_residual", r.max_residual}};
  out["witness"] = r.witness ? json(r.witness->to_string()) : json(nullptr);
  return out;
}

}  // namespace qlc
