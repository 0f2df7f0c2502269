#include <ordo/bench.hpp>

#include <ordo/errors.hpp>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstring>
#include <thread>

#include <fcntl.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

namespace ordo {

namespace {

// Child-side exit codes reserved for launcher failures.
constexpr int kSetupFailed = 125;

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (const char c : s) {
        if (c == '\'') { out += "'\\''"; }
        else {
            out += c;
        }
    }
    out += '\'';
    return out;
}

std::string substitute_instance(const std::string& command, const std::string& instance) {
    std::string out = command;
    if (const std::size_t at = out.find("{instance}"); at != std::string::npos) {
        out.replace(at, std::strlen("{instance}"), shell_quote(instance));
    }
    return out;
}

double rusage_cpu(const rusage& ru) {
    const auto sec = static_cast<double>(ru.ru_utime.tv_sec + ru.ru_stime.tv_sec);
    const auto usec = static_cast<double>(ru.ru_utime.tv_usec + ru.ru_stime.tv_usec);
    return sec + usec * 1e-6;
}

struct ChildResult {
    int     status      = 0;
    rusage  usage       = {};
    bool    wall_killed = false;
    std::string output;
};

ChildResult launch(const SolverManifest& manifest, const std::string& instance_path,
                   double cutoff_seconds, std::int64_t mem_limit_bytes) {
    int out_pipe[2];
    if (pipe(out_pipe) != 0) {
        throw Error(std::string("pipe failed: ") + std::strerror(errno));
    }

    const std::string command = substitute_instance(manifest.command, instance_path);
    const pid_t       pid     = fork();
    if (pid < 0) {
        close(out_pipe[0]);
        close(out_pipe[1]);
        throw Error(std::string("fork failed: ") + std::strerror(errno));
    }
    if (pid == 0) {
        setpgid(0, 0);
        close(out_pipe[0]);
        if (dup2(out_pipe[1], STDOUT_FILENO) < 0 || dup2(out_pipe[1], STDERR_FILENO) < 0) {
            _exit(kSetupFailed);
        }
        close(out_pipe[1]);
        if (manifest.input == InputMode::standard_input) {
            const int fd = open(instance_path.c_str(), O_RDONLY);
            if (fd < 0 || dup2(fd, STDIN_FILENO) < 0) { _exit(kSetupFailed); }
            close(fd);
        }
        else {
            const int devnull = open("/dev/null", O_RDONLY);
            if (devnull >= 0) { dup2(devnull, STDIN_FILENO); close(devnull); }
        }
        const auto cpu_cap = static_cast<rlim_t>(std::ceil(std::max(cutoff_seconds, 1.0)));
        rlimit     cpu{cpu_cap, cpu_cap + 1};
        if (setrlimit(RLIMIT_CPU, &cpu) != 0) { _exit(kSetupFailed); }
        if (mem_limit_bytes > 0) {
            const auto cap = static_cast<rlim_t>(mem_limit_bytes);
            rlimit     mem{cap, cap};
            if (setrlimit(RLIMIT_AS, &mem) != 0) { _exit(kSetupFailed); }
        }
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }

    close(out_pipe[1]);
    ChildResult result;

    // watchdog: grant the cutoff plus slack in wall time, then kill the group
    const double wall_budget = cutoff_seconds + std::max(1.0, 0.25 * cutoff_seconds);
    const auto   started     = std::chrono::steady_clock::now();
    bool         exited      = false;
    std::thread  reader([&result, fd = out_pipe[0]]() {
        char buf[4096];
        for (;;) {
            const ssize_t n = read(fd, buf, sizeof(buf));
            if (n <= 0) { break; }
            if (result.output.size() < (1u << 20)) { result.output.append(buf, static_cast<std::size_t>(n)); }
        }
    });
    for (;;) {
        int       status = 0;
        const pid_t got = wait4(pid, &status, WNOHANG, &result.usage);
        if (got == pid) {
            result.status = status;
            exited        = true;
            break;
        }
        if (got < 0) { break; }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        if (elapsed.count() > wall_budget) {
            kill(-pid, SIGKILL);
            kill(pid, SIGKILL);
            result.wall_killed = true;
            wait4(pid, &result.status, 0, &result.usage);
            exited = true;
            break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    if (!exited) { wait4(pid, &result.status, 0, &result.usage); }
    close(out_pipe[0]);
    reader.join();
    return result;
}

} // namespace

RunRecord run_solver(const SolverManifest& manifest, const std::string& instance_path,
                     double cutoff_seconds, std::int64_t mem_limit_bytes,
                     const std::string& config_id) {
    RunRecord record;
    record.instance = instance_path;
    record.config   = config_id.empty() ? manifest.name : config_id;

    ChildResult child;
    try {
        child = launch(manifest, instance_path, cutoff_seconds, mem_limit_bytes);
    }
    catch (const Error&) {
        record.outcome = Outcome::crash;
        return record;
    }
    record.cpu_seconds = rusage_cpu(child.usage);

    const bool signalled = WIFSIGNALED(child.status);
    const int  termsig   = signalled ? WTERMSIG(child.status) : 0;
    const int  exit_code = WIFEXITED(child.status) ? WEXITSTATUS(child.status) : -1;

    if (child.wall_killed || termsig == SIGXCPU || record.cpu_seconds >= cutoff_seconds) {
        record.outcome     = Outcome::timeout;
        record.cpu_seconds = std::max(record.cpu_seconds, cutoff_seconds);
        return record;
    }
    for (const auto& [outcome, substring] : manifest.patterns) {
        if (child.output.find(substring) != std::string::npos) {
            record.outcome = outcome;
            return record;
        }
    }
    if (exit_code >= 0) {
        if (const auto it = manifest.exit_codes.find(exit_code); it != manifest.exit_codes.end()) {
            record.outcome = it->second;
            return record;
        }
        if (exit_code == kSetupFailed || exit_code == 126 || exit_code == 127) {
            record.outcome = Outcome::crash;
            return record;
        }
        record.outcome = Outcome::unknown;
        return record;
    }
    if (signalled && mem_limit_bytes > 0 &&
        child.usage.ru_maxrss * 1024 >= static_cast<std::int64_t>(0.8 * static_cast<double>(mem_limit_bytes))) {
        record.outcome = Outcome::memout;
        return record;
    }
    record.outcome = Outcome::crash;
    return record;
}

} // namespace ordo
