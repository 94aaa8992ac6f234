/* Copyright 2026 The ksatptf Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "ksat/error.hpp"

namespace ksat {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::TextureSumViolation: return "TextureSumViolation";
    case ErrorCode::NonPositiveField: return "NonPositiveField";
    case ErrorCode::PercentOutOfRange: return "PercentOutOfRange";
    case ErrorCode::NonphysicalDensity: return "NonphysicalDensity";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NonPositiveEstimate: return "NonPositiveEstimate";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::MissingFeature: return "MissingFeature";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::FileError: return "FileError";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

} // namespace ksat
