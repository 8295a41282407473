// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/pipeline/dataset.hpp"

#include <charconv>
#include <fstream>

#include "speaking/core/errors.hpp"

namespace speaking {

namespace {

struct CsvRecord {
    std::vector<std::string> fields;
    int line = 0;
};

// Whole-file RFC 4180 scan; quoted fields may span lines.
std::vector<CsvRecord> parse_csv(const std::string& text) {
    std::vector<CsvRecord> records;
    CsvRecord current;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    int line = 1;
    current.line = 1;

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        // A completely empty line is not a record.
        if (current.fields.size() > 1 || !current.fields[0].empty()) {
            records.push_back(std::move(current));
        }
        current = {};
        current.line = line;
    };

    for (size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field_started && field.empty()) {
                    in_quotes = true;
                    field_started = true;
                } else {
                    field += c;
                }
                break;
            case ',':
                end_field();
                break;
            case '\r':
                break;
            case '\n':
                ++line;
                end_record();
                break;
            default:
                field_started = true;
                field += c;
        }
    }
    if (in_quotes) {
        throw MalformedRow("unterminated quoted field", current.line);
    }
    if (field_started || !field.empty() || !current.fields.empty()) {
        end_record();
    }
    return records;
}

int parse_year(const std::string& s, int line) {
    int year = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), year);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw MalformedRow("date '" + s + "' is not an integer year", line);
    }
    return year;
}

}  // namespace

std::vector<ArtworkMetadata> load_dataset_manifest(const std::filesystem::path& csv) {
    std::ifstream in(csv, std::ios::binary);
    if (!in) throw IoError("cannot open dataset manifest: " + csv.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    const auto records = parse_csv(text);
    if (records.empty()) {
        throw MalformedRow("dataset manifest has no header", 1);
    }
    const auto& header = records.front().fields;
    const std::vector<std::string> expected = {"author", "title", "date", "source_file"};
    if (header != expected) {
        throw MalformedRow("header must be author,title,date,source_file", records.front().line);
    }

    std::vector<ArtworkMetadata> rows;
    rows.reserve(records.size() - 1);
    for (size_t i = 1; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.fields.size() != 4) {
            throw MalformedRow(
                "expected 4 fields, got " + std::to_string(rec.fields.size()), rec.line);
        }
        ArtworkMetadata m;
        m.author = rec.fields[0];
        m.title = rec.fields[1];
        m.year = parse_year(rec.fields[2], rec.line);
        m.source_file = rec.fields[3];
        rows.push_back(std::move(m));
    }
    return rows;
}

std::optional<ArtworkMetadata> find_metadata(const std::vector<ArtworkMetadata>& rows,
                                             const std::string& stem) {
    for (const auto& row : rows) {
        if (row.source_file == stem ||
            std::filesystem::path(row.source_file).stem().string() == stem) {
            return row;
        }
    }
    return std::nullopt;
}

}  // namespace speaking
