#pragma once

#include <openssl/evp.h>

#include <json.hpp>
#include <string>

#include "frozenflux/io/csv.hpp"
#include "frozenflux/mhd/config.hpp"

namespace frozenflux::cli {

/// SHA-1 of "blob <size>\0<content>", the id git gives the same file.
inline std::string git_blob_sha1(const std::string& content) {
  const std::string data = "blob " + std::to_string(content.size()) + std::string(1, '\0') + content;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha1(), nullptr) != 1)
    throw std::runtime_error("sha1 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

inline nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["grid"] = {{"n", c.n}, {"length", c.length}};
  j["params"] = {{"mu", c.params.mu},
                 {"lambda", c.params.lambda},
                 {"rho_floor", c.params.rho_floor},
                 {"cfl", c.params.cfl},
                 {"dealias", std::string(to_string(c.params.dealias))},
                 {"nonlinear", c.params.nonlinear}};
  j["ic"] = {{"type", c.ic.type}, {"epsilon", c.ic.epsilon}, {"seed", c.ic.seed}, {"mode", c.ic.mode}, {"paths", c.ic.paths}};
  j["run"] = {{"t_final", c.run.t_final},
              {"dt", c.run.dt},
              {"dump_every", c.run.dump_every},
              {"ledger_every", c.run.ledger_every},
              {"output_dir", c.run.output_dir}};
  return j;
}

inline nlohmann::ordered_json to_json(const Tolerances& t) {
  return {{"cons", t.cons}, {"div", t.div}, {"mean", t.mean}};
}

}  // namespace frozenflux::cli
