#pragma once

#include <optional>
#include <string>

#include "hft/classify.hpp"
#include "hft/stellar.hpp"

namespace hftctl {

// A loaded spec file. Keys:
//   group:   {"cyclic": n} | {"product": [n1, n2, ...]} | {"symmetric": 3} | {"table": [[...]], "names": [...]}
//   algebra: {"group_algebra": {}} | {"matrix_model": <model JSON>} | {"explicit": <algebra JSON>}
//   trace:   optional list of scalars on A_e (defaults for the two built-in families)
//   z:       optional list of scalars; when present it is used as given instead of solved for
//   context: optional, only "identity" (B = A^op)
//   stellar: optional, "trivial" | "transpose" | {"anti_involution": [[[row], ...] per degree]}
struct Spec {
    hft::GroupTable group;
    hft::FrobeniusPackage frobenius;
    std::optional<hft::ModelData> model;
    std::optional<hft::StellarData> stellar;
};

hft::GroupTable group_from_json(const nlohmann::json& j);
// Throws hft::Error("Schema", ...) and whatever the constructors throw on bad data.
Spec load_spec(const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace hftctl
