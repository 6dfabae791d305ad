// Copyright 2026 The pdfhc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PDFHC_CLIENT_BUNDLE_IO_H_
#define PDFHC_CLIENT_BUNDLE_IO_H_

#include <filesystem>

#include "json.hpp"
#include "pdfhc/client/scheme.h"

namespace pdfhc {

nlohmann::json BitsToJson(const BitVector& bits);
BitVector BitsFromJson(const nlohmann::json& doc);

// Lanes are written as [r, c, k] triples.
nlohmann::json BundleToJson(const ScenarioBundle& bundle);
ScenarioBundle BundleFromJson(const nlohmann::json& doc);

// The bundle file is secret: it is created with owner-only permissions.
void SaveBundle(const ScenarioBundle& bundle, const std::filesystem::path& path);
ScenarioBundle LoadBundle(const std::filesystem::path& path);

nlohmann::json RevelationToJson(const Revelation& rev, std::size_t width);
Revelation RevelationFromJson(const nlohmann::json& doc, std::size_t height, std::size_t width);

// Writes `text` to `path`; with `secret`, the file is owner read/write only.
void WriteTextFile(const std::filesystem::path& path, const std::string& text, bool secret = false);
std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace pdfhc

#endif  // PDFHC_CLIENT_BUNDLE_IO_H_
