#pragma once

#include <zlib.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sgbench/errors.hpp"
#include "sgbench/types.hpp"

namespace sgbench {

// Subgraph file format:
//   one triple per line: subject<TAB>relation<TAB>object
//   subgraphs separated by one blank line
// Sidecar id maps: entities.txt / relations.txt, one `id<TAB>label` per line.
// Files ending in .gz are gzip-compressed; reads are transparent either way.

inline std::string read_file_bytes(const std::filesystem::path& path) {
    // gzread passes non-gzip bytes through unchanged, so one code path
    // covers both plain and .gz inputs.
    gzFile f = gzopen(path.string().c_str(), "rb");
    if (!f) throw IoError("cannot open " + path.string());
    std::string out;
    char buf[1 << 16];
    int n;
    while ((n = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<size_t>(n));
    if (n < 0) {
        gzclose(f);
        throw IoError("read failed: " + path.string());
    }
    gzclose(f);
    return out;
}

inline void write_file_bytes(const std::filesystem::path& path, std::string_view bytes) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    if (path.extension() == ".gz") {
        gzFile f = gzopen(path.string().c_str(), "wb9");
        if (!f) throw IoError("cannot open for write: " + path.string());
        if (!bytes.empty() &&
            gzwrite(f, bytes.data(), static_cast<unsigned>(bytes.size())) !=
                static_cast<int>(bytes.size())) {
            gzclose(f);
            throw IoError("write failed: " + path.string());
        }
        gzclose(f);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for write: " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

// Whitespace inside labels becomes '_' on ingestion; fields are TAB-separated
// so only spaces can occur.
inline std::string normalize_label(std::string_view raw) {
    std::string label(raw);
    for (char& c : label)
        if (c == ' ') c = '_';
    return label;
}

struct ParsedGraphs {
    std::vector<Subgraph> graphs;
    Vocabulary vocabulary;
    // 1-based line number of each subgraph's first triple, for diagnostics.
    std::vector<size_t> first_lines;
};

inline ParsedGraphs parse_subgraph_text(std::string_view text,
                                        std::optional<Vocabulary> vocabulary = std::nullopt) {
    ParsedGraphs out;
    out.vocabulary = vocabulary ? std::move(*vocabulary) : Vocabulary{};

    std::vector<Triple> current;
    size_t current_first_line = 0;
    auto flush = [&] {
        if (current.empty()) return;
        out.graphs.push_back(Subgraph::from_triples(std::move(current)));
        out.first_lines.push_back(current_first_line);
        current.clear();
    };

    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            if (pos == text.size()) break;
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (line.empty()) {
            flush();
            continue;
        }
        size_t t1 = line.find('\t');
        size_t t2 = t1 == std::string_view::npos ? std::string_view::npos : line.find('\t', t1 + 1);
        if (t1 == std::string_view::npos || t2 == std::string_view::npos ||
            line.find('\t', t2 + 1) != std::string_view::npos)
            throw ParseError("expected 3 tab-separated fields", line_no);
        std::string s = normalize_label(line.substr(0, t1));
        std::string r = normalize_label(line.substr(t1 + 1, t2 - t1 - 1));
        std::string o = normalize_label(line.substr(t2 + 1));
        if (s.empty() || r.empty() || o.empty()) throw ParseError("empty field", line_no);

        if (current.empty()) current_first_line = line_no;
        Triple triple{out.vocabulary.add_entity(s), out.vocabulary.add_relation(r),
                      out.vocabulary.add_entity(o)};
        for (const Triple& prev : current)
            if (prev == triple)
                throw IntegrityError("line " + std::to_string(line_no) +
                                     ": duplicate triple within subgraph");
        current.push_back(triple);
    }
    flush();
    return out;
}

inline ParsedGraphs parse_subgraph_file(const std::filesystem::path& path,
                                        std::optional<Vocabulary> vocabulary = std::nullopt) {
    return parse_subgraph_text(read_file_bytes(path), std::move(vocabulary));
}

inline void serialize_subgraph(std::string& out, const Subgraph& g, const Vocabulary& vocab) {
    for (const Triple& t : g.triples()) {
        out += vocab.entity_label(t.subject);
        out += '\t';
        out += vocab.relation_label(t.relation);
        out += '\t';
        out += vocab.entity_label(t.object);
        out += '\n';
    }
}

inline std::string serialize_subgraphs(std::span<const Subgraph> graphs, const Vocabulary& vocab) {
    std::string out;
    for (size_t i = 0; i < graphs.size(); ++i) {
        if (i) out += '\n';
        serialize_subgraph(out, graphs[i], vocab);
    }
    return out;
}

inline void write_subgraph_file(const std::filesystem::path& path,
                                std::span<const Subgraph> graphs, const Vocabulary& vocab) {
    write_file_bytes(path, serialize_subgraphs(graphs, vocab));
}

inline std::string serialize_id_map(const std::vector<std::string>& labels) {
    std::string out;
    for (size_t i = 0; i < labels.size(); ++i) {
        out += std::to_string(i);
        out += '\t';
        out += labels[i];
        out += '\n';
    }
    return out;
}

inline std::vector<std::string> parse_id_map(std::string_view text) {
    std::vector<std::string> labels;
    size_t pos = 0, line_no = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string_view::npos) throw ParseError("expected id<TAB>label", line_no);
        size_t id = 0;
        try {
            id = std::stoul(std::string(line.substr(0, tab)));
        } catch (const std::exception&) {
            throw ParseError("bad id field", line_no);
        }
        if (id != labels.size()) throw ParseError("ids must be dense and ascending", line_no);
        labels.push_back(normalize_label(line.substr(tab + 1)));
    }
    return labels;
}

// Reads entities.txt / relations.txt into a sealed vocabulary.
inline Vocabulary read_sidecar_vocabulary(const std::filesystem::path& entities_path,
                                          const std::filesystem::path& relations_path) {
    Vocabulary vocab;
    for (const std::string& label : parse_id_map(read_file_bytes(entities_path)))
        vocab.add_entity(label);
    for (const std::string& label : parse_id_map(read_file_bytes(relations_path)))
        vocab.add_relation(label);
    vocab.seal();
    return vocab;
}

inline void write_sidecar_vocabulary(const std::filesystem::path& dir, const Vocabulary& vocab) {
    write_file_bytes(dir / "entities.txt", serialize_id_map(vocab.entity_labels()));
    write_file_bytes(dir / "relations.txt", serialize_id_map(vocab.relation_labels()));
}

}  // namespace sgbench
