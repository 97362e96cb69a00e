#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace burst {

// Shortest round-trip representation (std::to_chars), so emitted CSVs are
// byte-identical across runs and machines with the same libc++/libstdc++.
inline void append_double(std::string& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

inline void append_int(std::string& out, std::int64_t v) {
    char buf[24];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

inline void append_uint(std::string& out, std::uint64_t v) {
    char buf[24];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

inline std::string fmt_double(double v) {
    std::string s;
    append_double(s, v);
    return s;
}

// Buffered CSV/text sink.  Rows are assembled by the caller; the writer only
// owns buffering and the final flush.
class CsvFile {
public:
    explicit CsvFile(const std::string& path) : path_(path) {
        f_ = std::fopen(path.c_str(), "wb");
        if (!f_) throw std::runtime_error("cannot open for writing: " + path);
        buf_.reserve(1 << 20);
    }

    CsvFile(const CsvFile&) = delete;
    CsvFile& operator=(const CsvFile&) = delete;

    ~CsvFile() {
        if (f_) {
            flush();
            std::fclose(f_);
        }
    }

    void write(std::string_view s) {
        buf_.append(s);
        if (buf_.size() >= (1 << 20)) flush();
    }

    void flush() {
        if (!buf_.empty()) {
            if (std::fwrite(buf_.data(), 1, buf_.size(), f_) != buf_.size())
                throw std::runtime_error("short write: " + path_);
            buf_.clear();
        }
    }

    void close() {
        flush();
        if (f_) {
            std::fclose(f_);
            f_ = nullptr;
        }
    }

private:
    std::string path_;
    std::FILE* f_ = nullptr;
    std::string buf_;
};

} // namespace burst
