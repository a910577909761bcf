#include "dqm/dqm_file.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace dqm {

namespace {

bool is_blank_or_comment(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

double parse_real(std::string_view token, std::size_t line_no) {
    double v = 0.0;
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::ParseError, "bad real '" + std::string(token) + "' on line " + std::to_string(line_no));
    }
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

}  // namespace

std::string format_real(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void write_dqm(std::ostream& os, const DQMatrix& a) {
    os << "DQM " << a.rows() << ' ' << a.cols() << '\n';
    for (const auto& q : a.entries()) {
        const std::array<double, 8> c{q.st.w, q.st.x, q.st.y, q.st.z, q.in.w, q.in.x, q.in.y, q.in.z};
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << format_real(c[i]);
        os << '\n';
    }
}

DQMatrix read_dqm(std::istream& is) {
    std::string line;
    std::size_t line_no = 0;
    auto next_record = [&]() -> std::vector<std::string> {
        while (std::getline(is, line)) {
            ++line_no;
            if (!is_blank_or_comment(line)) return split(line);
        }
        return {};
    };

    const auto header = next_record();
    if (header.size() != 3 || header[0] != "DQM") throw Error(ErrorCode::ParseError, "missing 'DQM rows cols' header");
    std::size_t rows = 0;
    std::size_t cols = 0;
    for (auto [tok, dst] : {std::pair{&header[1], &rows}, std::pair{&header[2], &cols}}) {
        const auto [ptr, ec] = std::from_chars(tok->data(), tok->data() + tok->size(), *dst);
        if (ec != std::errc{} || ptr != tok->data() + tok->size()) {
            throw Error(ErrorCode::ParseError, "bad dimension '" + *tok + "'");
        }
    }
    if (rows == 0 || cols == 0) throw Error(ErrorCode::EmptyMatrix, "matrix dimensions must be positive");

    DQMatrix a(rows, cols);
    for (auto& q : a.entries()) {
        const auto rec = next_record();
        if (rec.empty()) throw Error(ErrorCode::ParseError, "file ends before all entries were read");
        if (rec.size() != 8) {
            throw Error(ErrorCode::ParseError, "expected 8 reals on line " + std::to_string(line_no));
        }
        std::array<double, 8> c{};
        for (std::size_t i = 0; i < 8; ++i) c[i] = parse_real(rec[i], line_no);
        q = {{c[0], c[1], c[2], c[3]}, {c[4], c[5], c[6], c[7]}};
    }
    if (!next_record().empty()) throw Error(ErrorCode::ParseError, "trailing data after last entry");
    return a;
}

void save_dqm(const std::filesystem::path& path, const DQMatrix& a) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "' for writing");
    write_dqm(os, a);
    if (!os) throw Error(ErrorCode::ParseError, "write to '" + path.string() + "' failed");
}

DQMatrix load_dqm(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
    return read_dqm(is);
}

}  // namespace dqm
