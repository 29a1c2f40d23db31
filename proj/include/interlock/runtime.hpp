#ifndef INTERLOCK_RUNTIME_HPP
#define INTERLOCK_RUNTIME_HPP

#include <string>

namespace interlock::runtime {

// Worker cap for the parallel kernels. 1 forces the serial paths.
// 0 resets to the hardware default. Results never depend on this value.
int max_threads();
void set_max_threads(int n);

// Periodic progress lines for long searches. Always written to stderr,
// never to the data stream. Off by default; the CLI switches it on.
bool progress_enabled();
void set_progress_enabled(bool on);
void progress(const std::string& line);

}  // namespace interlock::runtime

#endif
