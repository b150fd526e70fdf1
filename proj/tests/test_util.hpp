#pragma once

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

struct TestRunner {
    int passed = 0;
    int failed = 0;

    void pass(const std::string&) { ++passed; }

    void fail(const std::string& name, const std::string& detail = "") {
        ++failed;
        std::cout << "FAIL: " << name;
        if (!detail.empty()) std::cout << " :: " << detail;
        std::cout << "\n";
    }

    void expect_true(bool cond, const std::string& name) {
        cond ? pass(name) : fail(name);
    }

    void expect_near(double got, double want, double tol, const std::string& name) {
        if (std::isfinite(got) && std::abs(got - want) <= tol) {
            pass(name);
        } else {
            char buf[200];
            std::snprintf(buf, sizeof buf, "got %.17g, want %.17g (tol %g)", got, want,
                          tol);
            fail(name, buf);
        }
    }

    void expect_le(double got, double bound, const std::string& name) {
        if (std::isfinite(got) && got <= bound) {
            pass(name);
        } else {
            char buf[200];
            std::snprintf(buf, sizeof buf, "got %.17g, bound %.17g", got, bound);
            fail(name, buf);
        }
    }

    template <class T>
    void expect_eq(const T& got, const T& want, const std::string& name) {
        if (got == want) {
            pass(name);
        } else {
            fail(name, "values differ");
        }
    }

    template <class F>
    void expect_throw(F&& fn, const std::string& name) {
        try {
            fn();
            fail(name, "no exception thrown");
        } catch (const std::exception&) {
            pass(name);
        }
    }

    template <class F>
    void expect_no_throw(F&& fn, const std::string& name) {
        try {
            fn();
            pass(name);
        } catch (const std::exception& e) {
            fail(name, std::string("threw: ") + e.what());
        }
    }

    int summary(const char* suite) {
        std::cout << suite << ": " << passed << " passed, " << failed << " failed"
                  << std::endl;
        return failed == 0 ? 0 : 1;
    }
};
