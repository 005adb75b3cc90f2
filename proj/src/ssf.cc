// Copyright 2026 The TeluRef Authors.
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

#include "teluref/ssf.h"

#include <algorithm>
#include <cctype>

#include "teluref/error.h"

namespace teluref {
namespace {

std::string_view Trim(std::string_view s) {
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> SplitWhitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::vector<std::string_view> SplitCommas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
}

// Matches SSF addresses such as "3" or "3.1".
bool IsAddress(std::string_view s) {
  if (s.empty() || s.front() == '.' || s.back() == '.') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c == '.' || std::isdigit(static_cast<unsigned char>(c));
  });
}

struct FsAttributes {
  std::optional<std::string> af;
  std::optional<std::string> name;
};

// Reads key=value pairs out of "<fs ...>". Values may be single-quoted,
// double-quoted or bare. Alternatives separated by '|' keep the first.
FsAttributes ParseFsTag(std::string_view tag) {
  FsAttributes attrs;
  std::size_t i = 3;  // past "<fs"
  while (i < tag.size()) {
    while (i < tag.size() && std::isspace(static_cast<unsigned char>(tag[i])))
      ++i;
    if (i >= tag.size() || tag[i] == '>' || tag[i] == '|') break;
    std::size_t key_start = i;
    while (i < tag.size() && tag[i] != '=' && tag[i] != '>' &&
           !std::isspace(static_cast<unsigned char>(tag[i])))
      ++i;
    std::string_view key = tag.substr(key_start, i - key_start);
    if (i >= tag.size() || tag[i] != '=') continue;
    ++i;
    std::string value;
    if (i < tag.size() && (tag[i] == '\'' || tag[i] == '"')) {
      char quote = tag[i++];
      std::size_t close = tag.find(quote, i);
      if (close == std::string_view::npos) close = tag.size();
      value = std::string(tag.substr(i, close - i));
      i = close + 1;
    } else {
      std::size_t start = i;
      while (i < tag.size() && tag[i] != '>' &&
             !std::isspace(static_cast<unsigned char>(tag[i])))
        ++i;
      value = std::string(tag.substr(start, i - start));
    }
    if (key == "af" && !attrs.af) attrs.af = value;
    if (key == "name" && !attrs.name) attrs.name = value;
  }
  return attrs;
}

class DocumentBuilder {
 public:
  explicit DocumentBuilder(const SsfParseOptions &options) : options_(options) {}

  void Problem(std::size_t line_no, const std::string &msg) {
    if (options_.strict) throw MalformedLine(line_no, msg);
    doc_.diagnostics.push_back({line_no, msg});
  }

  void EndSentence() {
    if (open_chunk_) {
      open_chunk_->end = current_.tokens.size();
      current_.chunks.push_back(*open_chunk_);
      open_chunk_.reset();
    }
    if (!current_.tokens.empty() || !current_.chunks.empty())
      doc_.sentences.push_back(std::move(current_));
    current_ = SsfSentence{};
  }

  void OpenChunk(std::size_t line_no, std::string tag) {
    if (open_chunk_) {
      Problem(line_no, "nested chunk opened before previous closed");
      open_chunk_->end = current_.tokens.size();
      current_.chunks.push_back(*open_chunk_);
    }
    open_chunk_ = SsfChunk{std::move(tag), current_.tokens.size(), 0};
  }

  void CloseChunk(std::size_t line_no) {
    if (!open_chunk_) {
      Problem(line_no, "chunk close without open");
      return;
    }
    open_chunk_->end = current_.tokens.size();
    current_.chunks.push_back(*open_chunk_);
    open_chunk_.reset();
  }

  void AddToken(std::size_t line_no, std::string_view form,
                std::string_view pos, std::string_view fs_tag) {
    SsfToken token;
    token.index = current_.tokens.size() + 1;
    token.form = std::string(form);
    token.pos = std::string(pos);
    if (!fs_tag.empty()) {
      FsAttributes attrs = ParseFsTag(fs_tag);
      token.fs.name = attrs.name;
      if (attrs.af) {
        try {
          token.fs = ParseFsAttribute(*attrs.af);
          token.fs.name = attrs.name;
        } catch (const TooFewFields &e) {
          Problem(line_no, e.what());
          token.fs.raw_af = *attrs.af;
        }
      }
    }
    current_.tokens.push_back(std::move(token));
  }

  void Line(std::size_t line_no, std::string_view raw) {
    std::string_view line = Trim(raw);
    if (line.empty()) {
      EndSentence();
      return;
    }
    if (line.starts_with("<Sentence")) {
      EndSentence();
      return;
    }
    if (line.starts_with("</Sentence")) {
      EndSentence();
      return;
    }
    if (line.front() == '<' || line.front() == '#') return;

    std::string_view fs_tag;
    std::size_t fs_pos = line.find("<fs");
    std::string_view columns_part = line;
    if (fs_pos != std::string_view::npos) {
      fs_tag = line.substr(fs_pos);
      columns_part = line.substr(0, fs_pos);
    }
    std::vector<std::string_view> cols = SplitWhitespace(columns_part);
    if (cols.size() >= 2 && IsAddress(cols[0])) cols.erase(cols.begin());
    if (cols.empty()) {
      Problem(line_no, "missing word form");
      return;
    }
    if (cols[0] == "((") {
      OpenChunk(line_no, cols.size() > 1 ? std::string(cols[1]) : "");
      return;
    }
    if (cols[0] == "))") {
      CloseChunk(line_no);
      return;
    }
    if (cols.size() < 2) {
      Problem(line_no, "missing POS column");
      return;
    }
    AddToken(line_no, cols[0], cols[1], fs_tag);
  }

  SsfDocument Finish() {
    EndSentence();
    return std::move(doc_);
  }

 private:
  const SsfParseOptions &options_;
  SsfDocument doc_;
  SsfSentence current_;
  std::optional<SsfChunk> open_chunk_;
};

}  // namespace

Gender DecodeGender(std::string_view code) {
  if (code == "m") return Gender::kMale;
  if (code == "f") return Gender::kFemale;
  return Gender::kAny;
}

Number DecodeNumber(std::string_view code) {
  if (code == "sg") return Number::kSingular;
  if (code == "pl") return Number::kPlural;
  return Number::kZero;
}

Person DecodePerson(std::string_view code) {
  if (code == "1") return Person::kFirst;
  if (code == "2") return Person::kSecond;
  if (code == "3") return Person::kThird;
  return Person::kNone;
}

std::string GenderCode(Gender g) {
  switch (g) {
    case Gender::kMale: return "m";
    case Gender::kFemale: return "f";
    case Gender::kAny: break;
  }
  return "any";
}

std::string NumberCode(Number n) {
  switch (n) {
    case Number::kSingular: return "sg";
    case Number::kPlural: return "pl";
    case Number::kZero: break;
  }
  return "zero";
}

std::string PersonCode(Person p) {
  switch (p) {
    case Person::kFirst: return "1";
    case Person::kSecond: return "2";
    case Person::kThird: return "3";
    case Person::kNone: break;
  }
  return "none";
}

FeatureStructure ParseFsAttribute(std::string_view af) {
  std::vector<std::string_view> fields = SplitCommas(af);
  if (fields.size() < 5) throw TooFewFields(std::string(af));
  FeatureStructure fs;
  fs.root = std::string(fields[0]);
  fs.category = std::string(fields[1]);
  fs.morph.gender = DecodeGender(fields[2]);
  fs.morph.number = DecodeNumber(fields[3]);
  fs.morph.person = DecodePerson(fields[4]);
  fs.raw_af = std::string(af);
  return fs;
}

SsfDocument ParseSsfDocument(std::string_view text,
                             const SsfParseOptions &options) {
  DocumentBuilder builder(options);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    builder.Line(++line_no, text.substr(start, nl - start));
    start = nl + 1;
  }
  return builder.Finish();
}

std::string SerializeSsf(const std::vector<SsfSentence> &sentences) {
  std::string out;
  auto write_token = [&out](const std::string &addr, const SsfToken &t) {
    out += addr + '\t' + t.form + '\t' + t.pos;
    if (!t.fs.raw_af.empty() || t.fs.name) {
      out += "\t<fs";
      auto attr = [&out](const char *key, const std::string &value) {
        char q = value.find('\'') == std::string::npos ? '\'' : '"';
        out += ' ';
        out += key;
        out += '=';
        out += q;
        out += value;
        out += q;
      };
      if (!t.fs.raw_af.empty()) attr("af", t.fs.raw_af);
      if (t.fs.name) attr("name", *t.fs.name);
      out += '>';
    }
    out += '\n';
  };

  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const SsfSentence &sentence = sentences[s];
    out += "<Sentence id=\"" + std::to_string(s + 1) + "\">\n";
    std::size_t next_chunk = 0;
    std::size_t address = 0;
    std::size_t i = 0;
    while (i < sentence.tokens.size() || next_chunk < sentence.chunks.size()) {
      if (next_chunk < sentence.chunks.size() &&
          sentence.chunks[next_chunk].begin == i) {
        const SsfChunk &chunk = sentence.chunks[next_chunk++];
        std::string addr = std::to_string(++address);
        out += addr + "\t((\t" + chunk.tag + '\n';
        std::size_t sub = 0;
        for (; i < chunk.end && i < sentence.tokens.size(); ++i)
          write_token(addr + '.' + std::to_string(++sub), sentence.tokens[i]);
        out += "\t))\n";
        continue;
      }
      if (i >= sentence.tokens.size()) break;
      write_token(std::to_string(++address), sentence.tokens[i]);
      ++i;
    }
    out += "</Sentence>\n\n";
  }
  return out;
}

bool IsMentionPos(std::string_view pos) {
  static constexpr std::string_view kTags[] = {"NN", "NNP", "NNC", "NNPC",
                                               "PRP", "PRPC", "VM"};
  return std::find(std::begin(kTags), std::end(kTags), pos) != std::end(kTags);
}

std::vector<MentionCandidate> ExtractMentionCandidates(
    const std::vector<SsfToken> &sentence) {
  std::vector<MentionCandidate> out;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    const SsfToken &t = sentence[i];
    if (!IsMentionPos(t.pos)) continue;
    out.push_back({i, i + 1, i, t.form, t.pos, t.fs.morph});
  }
  return out;
}

}  // namespace teluref
