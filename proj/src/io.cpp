#include "pmg/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <json.hpp>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace pmg {

std::string sample_to_jsonl(const Sample& sample) {
    std::string line = "{\"d\":\"";
    line += bits_to_string(sample.d);
    line += "\",\"x\":\"";
    line += bits_to_string(sample.x);
    line += "\",\"y\":";
    line += sample.y ? '1' : '0';
    line += '}';
    return line;
}

void write_samples_jsonl(std::ostream& out, const std::vector<Sample>& samples) {
    for (const Sample& sample : samples) {
        out << sample_to_jsonl(sample) << '\n';
    }
}

std::vector<Sample> read_samples_jsonl(std::istream& in) {
    std::vector<Sample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception&) {
            throw std::invalid_argument("malformed sample on line " + std::to_string(line_no));
        }
        if (!j.contains("d") || !j.contains("x") || !j.contains("y")) {
            throw std::invalid_argument("sample on line " + std::to_string(line_no) +
                                        " is missing d/x/y");
        }
        Sample sample;
        sample.d = bits_from_string(j.at("d").get<std::string>());
        sample.x = bits_from_string(j.at("x").get<std::string>());
        const int y = j.at("y").get<int>();
        if (y != 0 && y != 1) {
            throw std::invalid_argument("sample y must be 0 or 1 on line " +
                                        std::to_string(line_no));
        }
        sample.y = static_cast<std::uint8_t>(y);
        if (sample.d.size() != sample.x.size()) {
            throw std::invalid_argument("sample on line " + std::to_string(line_no) +
                                        " has |d| != |x|");
        }
        samples.push_back(std::move(sample));
    }
    return samples;
}

std::string format_g15(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.15g", value);
    return buffer;
}

double round15(double value) {
    return std::strtod(format_g15(value).c_str(), nullptr);
}

double parse_angle(const std::string& text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s += ch;
        }
    }
    if (s.empty()) {
        throw std::invalid_argument("empty angle expression");
    }
    const std::size_t pos = s.find("pi");
    if (pos == std::string::npos) {
        char* end = nullptr;
        const double value = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size()) {
            throw std::invalid_argument("cannot parse angle: " + text);
        }
        return value;
    }
    double numerator = 1.0;
    std::string before = s.substr(0, pos);
    if (!before.empty() && before.back() == '*') {
        before.pop_back();
    }
    if (!before.empty()) {
        char* end = nullptr;
        numerator = std::strtod(before.c_str(), &end);
        if (end != before.c_str() + before.size()) {
            throw std::invalid_argument("cannot parse angle: " + text);
        }
    }
    double denominator = 1.0;
    std::string after = s.substr(pos + 2);
    if (!after.empty()) {
        if (after.front() != '/') {
            throw std::invalid_argument("cannot parse angle: " + text);
        }
        after.erase(after.begin());
        char* end = nullptr;
        denominator = std::strtod(after.c_str(), &end);
        if (end != after.c_str() + after.size() || denominator == 0.0) {
            throw std::invalid_argument("cannot parse angle: " + text);
        }
    }
    return numerator * std::numbers::pi / denominator;
}

std::vector<double> parse_angle_sweep(const std::string& text) {
    const std::size_t first = text.find(':');
    const std::size_t second = text.rfind(':');
    if (first == std::string::npos || second == first) {
        throw std::invalid_argument("sweep must look like lo:hi:count");
    }
    const double lo = parse_angle(text.substr(0, first));
    const double hi = parse_angle(text.substr(first + 1, second - first - 1));
    const long count = std::strtol(text.substr(second + 1).c_str(), nullptr, 10);
    if (count < 2 || lo <= 0.0 || hi <= lo) {
        throw std::invalid_argument("sweep needs 0 < lo < hi and count >= 2");
    }
    std::vector<double> points(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        points[static_cast<std::size_t>(i)] =
            lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return points;
}

}  // namespace pmg
