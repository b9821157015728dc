#pragma once

namespace fracsurv {

struct CensoredObservation {
    double time;
    bool event; // true = event observed, false = right-censored
};

} // namespace fracsurv
