#pragma once

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <csignal>
#include <cstdio>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#define CPPHTTPLIB_NO_EXCEPTIONS 0
#include <httplib.h>

#include "uied/classify.hpp"
#include "uied/error.hpp"
#include "uied/image_io.hpp"
#include "uied/protocol.hpp"

namespace uied {

namespace detail {

inline ClassifyRequest make_request(const RgbImage& crop, const BBox& source_bbox,
                                    const ClassVocabulary& vocab) {
    ClassifyRequest req;
    req.w = crop.width;
    req.h = crop.height;
    req.bbox = source_bbox;
    req.png = base64_encode(encode_png(crop));
    req.vocab = vocab.hash();
    return req;
}

}  // namespace detail

// ============================================================================
// HTTP transport: POST one request line to /classify, read one response line.
// ============================================================================

class HttpClassifier final : public Classifier {
public:
    HttpClassifier(std::string host, int port, ClassVocabulary vocab, int timeout_sec = 10)
        : vocab_(std::move(vocab)), client_(host, port) {
        client_.set_connection_timeout(timeout_sec, 0);
        client_.set_read_timeout(timeout_sec, 0);
        client_.set_write_timeout(timeout_sec, 0);
    }

    ClassifierVerdict classify(const RgbImage& crop, const BBox& source_bbox) override {
        const std::string body = encode_request(detail::make_request(crop, source_bbox, vocab_));
        std::lock_guard<std::mutex> lock(mutex_);
        httplib::Result res = client_.Post("/classify", body + "\n", "application/json");
        if (!res) throw ProtocolError("classifier endpoint unreachable: " + to_string(res.error()));
        if (res->status != 200)
            throw ProtocolError("classifier returned HTTP " + std::to_string(res->status));
        return decode_response(first_line(res->body), vocab_);
    }

    const ClassVocabulary& vocabulary() const override { return vocab_; }

private:
    static std::string first_line(const std::string& text) {
        const std::size_t nl = text.find('\n');
        return nl == std::string::npos ? text : text.substr(0, nl);
    }

    ClassVocabulary vocab_;
    httplib::Client client_;
    std::mutex mutex_;
};

// ============================================================================
// Subprocess transport: spawn a worker once, exchange one line per record
// over its stdin/stdout.
// ============================================================================

class SubprocessClassifier final : public Classifier {
public:
    SubprocessClassifier(const std::string& command, ClassVocabulary vocab)
        : vocab_(std::move(vocab)) {
        spawn(command);
    }

    ~SubprocessClassifier() override {
        if (to_child_) std::fclose(to_child_);
        if (from_child_) std::fclose(from_child_);
        if (pid_ > 0) waitpid(pid_, nullptr, 0);
    }

    SubprocessClassifier(const SubprocessClassifier&) = delete;
    SubprocessClassifier& operator=(const SubprocessClassifier&) = delete;

    ClassifierVerdict classify(const RgbImage& crop, const BBox& source_bbox) override {
        const std::string line = encode_request(detail::make_request(crop, source_bbox, vocab_));
        std::lock_guard<std::mutex> lock(mutex_);
        if (std::fputs(line.c_str(), to_child_) == EOF || std::fputc('\n', to_child_) == EOF ||
            std::fflush(to_child_) != 0)
            throw ProtocolError("classifier subprocess: write failed (worker exited?)");
        std::string response;
        int c;
        while ((c = std::fgetc(from_child_)) != EOF && c != '\n') response.push_back(char(c));
        if (response.empty() && c == EOF)
            throw ProtocolError("classifier subprocess: no response (worker exited?)");
        return decode_response(response, vocab_);
    }

    const ClassVocabulary& vocabulary() const override { return vocab_; }

private:
    void spawn(const std::string& command) {
        int in_pipe[2];   // parent -> child
        int out_pipe[2];  // child -> parent
        if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
            throw Error("classifier subprocess: pipe() failed");
        pid_ = fork();
        if (pid_ < 0) throw Error("classifier subprocess: fork() failed");
        if (pid_ == 0) {
            dup2(in_pipe[0], STDIN_FILENO);
            dup2(out_pipe[1], STDOUT_FILENO);
            close(in_pipe[0]);
            close(in_pipe[1]);
            close(out_pipe[0]);
            close(out_pipe[1]);
            execl("/bin/sh", "sh", "-c", command.c_str(), nullptr);
            _exit(127);
        }
        close(in_pipe[0]);
        close(out_pipe[1]);
        to_child_ = fdopen(in_pipe[1], "w");
        from_child_ = fdopen(out_pipe[0], "r");
        if (!to_child_ || !from_child_) throw Error("classifier subprocess: fdopen() failed");
    }

    ClassVocabulary vocab_;
    FILE* to_child_ = nullptr;
    FILE* from_child_ = nullptr;
    pid_t pid_ = -1;
    std::mutex mutex_;
};

// Builds a client from an endpoint string: "http://HOST:PORT" for the HTTP
// transport, "exec:COMMAND" for the subprocess transport.
inline std::unique_ptr<Classifier> make_classifier(const std::string& endpoint,
                                                   ClassVocabulary vocab) {
    if (endpoint.rfind("http://", 0) == 0) {
        const std::string rest = endpoint.substr(7);
        const std::size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw Error("classifier endpoint: expected http://HOST:PORT, got " + endpoint);
        const std::string host = rest.substr(0, colon);
        int port = 0;
        try {
            port = std::stoi(rest.substr(colon + 1));
        } catch (const std::exception&) {
            throw Error("classifier endpoint: bad port in " + endpoint);
        }
        return std::make_unique<HttpClassifier>(host, port, std::move(vocab));
    }
    if (endpoint.rfind("exec:", 0) == 0)
        return std::make_unique<SubprocessClassifier>(endpoint.substr(5), std::move(vocab));
    throw Error("classifier endpoint: expected http://HOST:PORT or exec:COMMAND, got " + endpoint);
}

// Convenience wrapper matching the per-region operation shape: one crop in,
// one validated verdict out.
inline ClassifierVerdict classify_region_external(const RgbImage& crop, const BBox& source_bbox,
                                                  Classifier& endpoint) {
    return endpoint.classify(crop, source_bbox);
}

}  // namespace uied
