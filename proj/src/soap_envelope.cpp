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
#include "xchannel/soap_envelope.hpp"

#include <algorithm>

#include "detail/xml.hpp"
#include "xchannel/base64.hpp"

namespace xchannel::soap {

namespace {

std::string escape_attribute(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

const detail::XmlElement* child_named(const detail::XmlElement& parent, std::string_view local) {
    for (const auto& child : parent.children) {
        if (child.local_name() == local) return &child;
    }
    return nullptr;
}

// Any prefix is accepted; a Body bound to the SOAP 1.1 namespace wins over
// one that is not.
const detail::XmlElement* find_body(const detail::XmlElement& root) {
    if (root.local_name() != "Envelope") return nullptr;
    const detail::XmlElement* fallback = nullptr;
    for (const auto& child : root.children) {
        if (child.local_name() != "Body") continue;
        if (detail::resolve_namespace({&root, &child}, child.prefix()) == kEnvelopeNs) return &child;
        if (fallback == nullptr) fallback = &child;
    }
    return fallback;
}

std::string_view trim(std::string_view s) {
    auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string encode_raw_data_envelope(std::span<const std::uint8_t> payload, std::string_view urn) {
    const std::string data = base64_encode(payload);
    std::string out;
    out.reserve(data.size() + 600);
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<SOAP-ENV:Envelope\n";
    out += "xmlns:SOAP-ENV=\"";
    out += kEnvelopeNs;
    out += "\"\nxmlns:SOAP-ENC=\"";
    out += kEncodingNs;
    out += "\"\nxmlns:xsi=\"";
    out += kXsiNs;
    out += "\"\nxmlns:xsd=\"";
    out += kXsdNs;
    out += "\"\nxmlns:ns=\"";
    out += escape_attribute(urn);
    out += "\">\n";
    out += "<SOAP-ENV:Body\nSOAP-ENV:encodingStyle=\"";
    out += kEncodingNs;
    out += "\">\n";
    out += "<ns:rawDataMessage>\n";
    out += "<data xsi:type=\"xsd:base64Binary\">";
    out += data;
    out += "</data></ns:rawDataMessage>\n";
    out += "</SOAP-ENV:Body>\n";
    out += "</SOAP-ENV:Envelope>\n";
    return out;
}

Result<Bytes> decode_raw_data_envelope(std::string_view document) {
    auto root = detail::parse_xml(document);
    if (!root) return Status::protocol_error;
    const auto* body = find_body(*root);
    if (body == nullptr) return Status::protocol_error;
    const auto* message = child_named(*body, "rawDataMessage");
    if (message == nullptr) return Status::protocol_error;
    const auto* data = child_named(*message, "data");
    if (data == nullptr) return Status::protocol_error;
    return base64_decode(trim(data->text));
}

std::string encode_fault(std::string_view code, std::string_view message) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<SOAP-ENV:Envelope\nxmlns:SOAP-ENV=\"";
    out += kEnvelopeNs;
    out += "\">\n<SOAP-ENV:Body>\n<SOAP-ENV:Fault>\n<faultcode>";
    out += escape_attribute(code);
    out += "</faultcode>\n<faultstring>";
    out += escape_attribute(message);
    out += "</faultstring>\n</SOAP-ENV:Fault>\n</SOAP-ENV:Body>\n</SOAP-ENV:Envelope>\n";
    return out;
}

bool is_fault(std::string_view document) {
    auto root = detail::parse_xml(document);
    if (!root) return false;
    const auto* body = find_body(*root);
    return body != nullptr && child_named(*body, "Fault") != nullptr;
}

}  // namespace xchannel::soap
