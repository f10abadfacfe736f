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

#include "detail/xml.hpp"

#include <charconv>
#include <cstdint>

namespace xchannel::detail {

std::string_view XmlElement::local_name() const {
    std::string_view n = name;
    auto colon = n.find(':');
    return colon == std::string_view::npos ? n : n.substr(colon + 1);
}

std::string_view XmlElement::prefix() const {
    std::string_view n = name;
    auto colon = n.find(':');
    return colon == std::string_view::npos ? std::string_view{} : n.substr(0, colon);
}

const std::string* XmlElement::attribute(std::string_view qualified) const {
    for (const auto& [key, value] : attributes) {
        if (key == qualified) return &value;
    }
    return nullptr;
}

std::optional<std::string> resolve_namespace(const std::vector<const XmlElement*>& path,
                                             std::string_view prefix) {
    const std::string key = prefix.empty() ? "xmlns" : "xmlns:" + std::string(prefix);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        if (const auto* uri = (*it)->attribute(key)) return *uri;
    }
    return std::nullopt;
}

namespace {

constexpr int kMaxDepth = 256;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_name_start(char c) {
    auto u = static_cast<unsigned char>(c);
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == ':' || u >= 0x80;
}

bool is_name_char(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xc0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xe0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else {
        out += static_cast<char>(0xf0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    }
}

class Parser {
public:
    explicit Parser(std::string_view doc) : doc_(doc) {}

    Result<XmlElement> document() {
        if (doc_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
        if (!misc(true)) return Status::protocol_error;
        if (!peek('<')) return Status::protocol_error;
        XmlElement root;
        if (!element(root, 0)) return Status::protocol_error;
        if (!misc(false) || pos_ != doc_.size()) return Status::protocol_error;
        return root;
    }

private:
    bool peek(char c) const { return pos_ < doc_.size() && doc_[pos_] == c; }
    bool starts(std::string_view s) const { return doc_.substr(pos_, s.size()) == s; }

    void skip_space() {
        while (pos_ < doc_.size() && is_space(doc_[pos_])) ++pos_;
    }

    bool skip_past(std::string_view terminator) {
        auto end = doc_.find(terminator, pos_);
        if (end == std::string_view::npos) return false;
        pos_ = end + terminator.size();
        return true;
    }

    // Whitespace, comments and PIs around the root element.
    bool misc(bool prolog) {
        for (;;) {
            skip_space();
            if (starts("<!--")) {
                pos_ += 4;
                if (!skip_past("-->")) return false;
            } else if (starts("<?")) {
                pos_ += 2;
                if (!skip_past("?>")) return false;
            } else if (starts("<!")) {
                return false;  // DOCTYPE and friends
            } else {
                return prolog || pos_ == doc_.size();
            }
        }
    }

    bool name(std::string& out) {
        if (pos_ >= doc_.size() || !is_name_start(doc_[pos_])) return false;
        auto start = pos_;
        while (pos_ < doc_.size() && is_name_char(doc_[pos_])) ++pos_;
        out.assign(doc_.substr(start, pos_ - start));
        return true;
    }

    bool reference(std::string& out) {
        auto end = doc_.find(';', pos_);
        if (end == std::string_view::npos || end - pos_ > 12) return false;
        std::string_view ref = doc_.substr(pos_ + 1, end - pos_ - 1);
        pos_ = end + 1;
        if (ref == "lt") out += '<';
        else if (ref == "gt") out += '>';
        else if (ref == "amp") out += '&';
        else if (ref == "quot") out += '"';
        else if (ref == "apos") out += '\'';
        else if (ref.size() > 1 && ref[0] == '#') {
            std::uint32_t cp = 0;
            const bool hex = ref[1] == 'x';
            auto digits = ref.substr(hex ? 2 : 1);
            auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp,
                                           hex ? 16 : 10);
            if (digits.empty() || ec != std::errc{} || p != digits.data() + digits.size()) return false;
            if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
            append_utf8(out, cp);
        } else {
            return false;
        }
        return true;
    }

    bool attribute_value(std::string& out) {
        if (pos_ >= doc_.size() || (doc_[pos_] != '"' && doc_[pos_] != '\'')) return false;
        const char quote = doc_[pos_++];
        while (pos_ < doc_.size() && doc_[pos_] != quote) {
            const char c = doc_[pos_];
            if (c == '<') return false;
            if (c == '&') {
                if (!reference(out)) return false;
            } else {
                out += c;
                ++pos_;
            }
        }
        if (pos_ >= doc_.size()) return false;
        ++pos_;
        return true;
    }

    bool element(XmlElement& el, int depth) {
        if (depth > kMaxDepth) return false;
        ++pos_;  // '<'
        if (!name(el.name)) return false;
        for (;;) {
            const bool spaced = pos_ < doc_.size() && is_space(doc_[pos_]);
            skip_space();
            if (starts("/>")) {
                pos_ += 2;
                return true;
            }
            if (peek('>')) {
                ++pos_;
                break;
            }
            if (!spaced) return false;
            std::string key;
            std::string value;
            if (!name(key)) return false;
            skip_space();
            if (!peek('=')) return false;
            ++pos_;
            skip_space();
            if (!attribute_value(value)) return false;
            if (el.attribute(key) != nullptr) return false;
            el.attributes.emplace_back(std::move(key), std::move(value));
        }
        return content(el, depth);
    }

    bool content(XmlElement& el, int depth) {
        for (;;) {
            if (pos_ >= doc_.size()) return false;
            const char c = doc_[pos_];
            if (c == '&') {
                if (!reference(el.text)) return false;
            } else if (c != '<') {
                auto next = doc_.find_first_of("<&", pos_);
                if (next == std::string_view::npos) return false;
                el.text.append(doc_.substr(pos_, next - pos_));
                pos_ = next;
            } else if (starts("</")) {
                pos_ += 2;
                std::string closing;
                if (!name(closing) || closing != el.name) return false;
                skip_space();
                if (!peek('>')) return false;
                ++pos_;
                return true;
            } else if (starts("<!--")) {
                pos_ += 4;
                if (!skip_past("-->")) return false;
            } else if (starts("<![CDATA[")) {
                pos_ += 9;
                auto end = doc_.find("]]>", pos_);
                if (end == std::string_view::npos) return false;
                el.text.append(doc_.substr(pos_, end - pos_));
                pos_ = end + 3;
            } else if (starts("<?")) {
                pos_ += 2;
                if (!skip_past("?>")) return false;
            } else if (starts("<!")) {
                return false;
            } else {
                XmlElement child;
                if (!element(child, depth + 1)) return false;
                el.children.push_back(std::move(child));
            }
        }
    }

    std::string_view doc_;
    std::size_t pos_ = 0;
};

}  // namespace

Result<XmlElement> parse_xml(std::string_view document) { return Parser(document).document(); }

}  // namespace xchannel::detail
