#include "cgso/io.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cgso {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + tmp);
        out << content;
        if (!out.good()) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_node_value_csv(const std::vector<double>& values, const std::string& value_name) {
    std::ostringstream out;
    out << "node," << value_name << "\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out << i << "," << format_double(values[i]) << "\n";
    return out.str();
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

bool is_integer(const std::string& s) {
    if (s.empty()) return false;
    for (std::size_t i = (s[0] == '-' ? 1 : 0); i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return s != "-";
}

} // namespace

std::vector<int> read_node_int_csv(const std::string& text, int expected_n) {
    std::vector<int> out(expected_n, -1);
    for (const std::string& line : split_lines(text)) {
        auto cols = split_commas(line);
        if (cols.size() != 2) throw std::runtime_error("csv: expected two columns: " + line);
        if (!is_integer(cols[0])) continue; // header
        const int node = std::stoi(cols[0]);
        if (node < 0 || node >= expected_n)
            throw std::runtime_error("csv: node id out of range: " + cols[0]);
        out[node] = std::stoi(cols[1]);
    }
    for (int i = 0; i < expected_n; ++i)
        if (out[i] < 0) throw std::runtime_error("csv: missing row for node " + std::to_string(i));
    return out;
}

DenseMatrix read_features_csv(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw std::runtime_error("features csv: empty file");
    std::vector<std::vector<double>> rows;
    for (const std::string& line : lines) {
        auto cols = split_commas(line);
        std::vector<double> row;
        bool numeric = true;
        for (const auto& c : cols) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(c, &used));
                if (used != c.size()) numeric = false;
            } catch (...) {
                numeric = false;
            }
            if (!numeric) break;
        }
        if (!numeric) {
            if (rows.empty()) continue; // header line
            throw std::runtime_error("features csv: non-numeric row: " + line);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("features csv: ragged rows");
        rows.push_back(std::move(row));
    }
    DenseMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return m;
}

std::vector<int> read_mask_csv(const std::string& text, int expected_n) {
    std::vector<int> out(expected_n, -1);
    for (const std::string& line : split_lines(text)) {
        auto cols = split_commas(line);
        if (cols.size() != 2) throw std::runtime_error("mask csv: expected two columns: " + line);
        if (!is_integer(cols[0])) continue; // header
        const int node = std::stoi(cols[0]);
        if (node < 0 || node >= expected_n)
            throw std::runtime_error("mask csv: node id out of range: " + cols[0]);
        if (cols[1] == "train") out[node] = 0;
        else if (cols[1] == "val") out[node] = 1;
        else if (cols[1] == "test") out[node] = 2;
        else out[node] = -1;
    }
    return out;
}

} // namespace cgso
