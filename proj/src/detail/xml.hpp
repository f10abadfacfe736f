// Copyright 2026 The xchannel Authors
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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xchannel/result.hpp"

namespace xchannel::detail {

/// Just enough of an XML document model to read SOAP envelopes: elements,
/// attributes and the character data directly inside each element.
/// Comments and processing instructions are skipped; DOCTYPE is refused.
struct XmlElement {
    std::string name;  // qualified, e.g. "SOAP-ENV:Body"
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<XmlElement> children;
    std::string text;

    std::string_view local_name() const;
    std::string_view prefix() const;
    const std::string* attribute(std::string_view qualified) const;
};

/// Strict well-formedness check plus tree build. Mismatched tags, stray
/// markup, bad references or trailing content give Status::protocol_error.
Result<XmlElement> parse_xml(std::string_view document);

/// Namespace URI bound to `prefix` (empty for the default namespace) along
/// the path root..element, innermost binding winning.
std::optional<std::string> resolve_namespace(const std::vector<const XmlElement*>& path,
                                             std::string_view prefix);

}  // namespace xchannel::detail
