#ifndef AAMSIM_SERVER_H_
#define AAMSIM_SERVER_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "aamsim/model.h"
#include "aamsim/occupancy.h"
#include "aamsim/rng.h"
#include "aamsim/time.h"

namespace aamsim {

// Waiting times of an FCFS single server from the Lindley recursion
// L_{n+1} = max(0, L_n + T_n - A_{n+1}), L_0 = 0.
// Throws PreconditionError on length mismatch or unsorted arrivals.
std::vector<Nanos> LindleyWaits(std::span<const Nanos> arrivals,
                                std::span<const Nanos> services);

struct ServerRecord {
  std::int64_t seq = 0;
  Nanos arrival = 0;  // arrival at the server (a_n, or t_n behind a pacer)
  Nanos wait = 0;
  Nanos service = 0;
  Nanos departure = 0;
};

using RegimeFn = std::function<Regime(Nanos)>;

// Incremental FCFS server. Service times are drawn under the regime active
// at each packet's service start.
class DetectionServer {
 public:
  DetectionServer(const ServiceTimeModel& model, RegimeFn regime,
                  RngStream rng, double drain_slowdown_factor = 1.0);

  // Arrivals must be admitted in non-decreasing order.
  ServerRecord Admit(std::int64_t seq, Nanos arrival);

  Nanos free_at() const { return free_at_; }
  const RngStream& rng() const { return rng_; }

 private:
  ServiceTimeModel model_;
  RegimeFn regime_;
  RngStream rng_;
  double drain_slowdown_;
  Nanos free_at_ = 0;
  Nanos last_arrival_ = 0;
  bool attack_seen_ = false;
  bool started_ = false;
};

struct ServerTrace {
  std::vector<ServerRecord> records;
  // Packets waiting or in service.
  std::vector<QueueSample> timeline;
  std::int64_t peak_queue = 0;
  double mean_queue = 0.0;
};

struct ServerOptions {
  Nanos sample_dt = 100 * kNanosPerMilli;
  // Multiplies the service time of packets that queued behind a flood and
  // start service after it, under the normal regime.
  double drain_slowdown_factor = 1.0;
};

ServerTrace SimulateServer(std::span<const Nanos> arrivals,
                           const ServiceTimeModel& model,
                           const RegimeFn& regime, RngStream& rng,
                           const ServerOptions& options = {});

// Occupancy summary of server records.
Occupancy ServerOccupancy(std::span<const ServerRecord> records);

// CSV: seq,arrival_s,wait_s,service_s,departure_s
void WriteServerTraceCsv(std::ostream& out, std::span<const ServerRecord> records);

}  // namespace aamsim

#endif  // AAMSIM_SERVER_H_
