//! Every example runs to completion (their own assertions included).

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example!(chambers);
example!(flag);
example!(orlik_solomon);
example!(chamber_complex);
example!(resonant_bands);
example!(mod2_cocycles);
example!(nets);
example!(non_separation);
example!(zmod);
example!(decone);
example!(cli_report);
