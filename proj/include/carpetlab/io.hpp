#ifndef CARPETLAB_IO_HPP
#define CARPETLAB_IO_HPP

#include <string>

#include <json.hpp>

#include "carpetlab/harnack.hpp"
#include "carpetlab/heatkernel.hpp"
#include "carpetlab/scaling.hpp"
#include "carpetlab/walk.hpp"

namespace carpetlab {

// Write-temp-then-rename; parent directories are created as needed.
void write_text_atomic(const std::string& path, const std::string& content);

// Serialized with fixed 2-space indentation and a trailing newline so that
// identical reports are byte-identical.
void write_json_atomic(const std::string& path, const nlohmann::json& j);

nlohmann::json to_json(const ResistanceEntry& e);
nlohmann::json to_json(const InequalityEntry& e);
nlohmann::json to_json(const LambdaEstimate& e);
nlohmann::json to_json(const ScalingReport& r);
nlohmann::json to_json(const CornerMoveReport& r);
nlohmann::json to_json(const YChainReport& r);
nlohmann::json to_json(const KnightMoveReport& r);
nlohmann::json to_json(const ExitTimeReport& r);
nlohmann::json to_json(const FoldingResult& r);
nlohmann::json to_json(const HarnackReport& r);
nlohmann::json to_json(const DiagonalProfile& p);
nlohmann::json to_json(const EnvelopeFit& f);
nlohmann::json to_json(const RescalingCheck& c);

// Flat CSV of the resistance table: n,method,R per line.
std::string scaling_csv(const ScalingReport& r);

}  // namespace carpetlab

#endif
