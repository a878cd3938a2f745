pub mod braid_words;
